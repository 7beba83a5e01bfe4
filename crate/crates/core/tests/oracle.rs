// Copyright 2026 The klm-prep Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

use klm_prep::planner::ORACLE_MAX_QUBITS;
use klm_prep::{brute_force_plan, plan, simulate_plan, Family, KlmError, KlmSpec, Strategy};

fn compare(spec: &KlmSpec, grid: usize, tol: f64) {
    let fast = plan(spec, Strategy::Optimal).unwrap();
    let slow = brute_force_plan(spec, grid).unwrap();
    let (a, b) = (fast.report.total, slow.report.total);
    assert!((a - b).abs() <= tol * a, "planner {a} vs oracle {b}");
    assert!(b <= a * (1.0 + 1e-9), "oracle beat the planner: {b} > {a}");
    assert!(simulate_plan(&slow).unwrap().fidelity >= 1.0 - 1e-6);
}

#[test]
fn two_qubit_triangular() {
    let spec = KlmSpec::family(Family::Triangular2 { ratio: 0.25 }, 2).unwrap();
    compare(&spec, 2001, 5e-3);
}

#[test]
fn uniform_three_qubit() {
    compare(&KlmSpec::family(Family::Uniform, 3).unwrap(), 201, 1e-2);
}

#[test]
fn four_qubit_triangular() {
    let spec = KlmSpec::from_real(&[1.0, 3.0, 6.0, 3.0, 1.0]).unwrap();
    compare(&spec, 401, 5e-3);
}

#[test]
fn rejects_out_of_range_requests() {
    let big = KlmSpec::family(Family::Uniform, ORACLE_MAX_QUBITS + 1).unwrap();
    assert!(matches!(brute_force_plan(&big, 11), Err(KlmError::Size(_))));
    let small = KlmSpec::family(Family::Uniform, 2).unwrap();
    assert!(brute_force_plan(&small, 1).is_err());
}
