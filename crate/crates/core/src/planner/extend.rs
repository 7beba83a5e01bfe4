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

//! Growing a KLM state by one qubit with a fixed Hadamard / quarter-pi gadget.
//!
//! The new qubit enters in `|0>`, passes a Hadamard, a controlled phase of pi/2
//! with the last existing qubit, and a second Hadamard. Only the `|1>^n` branch sees
//! the phase, which leaves the new qubit in an equal-magnitude superposition.
//! Two phase gates then make both halves real relative to the rest of the state.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use crate::error::{KlmError, Result};
use crate::gate::{elementary, phase_gate, Elementary};
use crate::klm::KlmSpec;
use crate::planner::PrepStep;
use crate::state::{QubitParams, StateVector};
use crate::success::p_cphase;

/// Result of an equal split of the last amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualSplit {
    /// `(alpha_0, ..., alpha_{n-1}, alpha_n/sqrt2, alpha_n/sqrt2)`.
    pub spec: KlmSpec,
    pub step: PrepStep,
    /// Phase-gate angles on the control (old last) qubit and on the new qubit.
    pub phase_corrections: [f64; 2],
    pub success: f64,
}

pub fn extend_equal_split(spec: &KlmSpec) -> Result<EqualSplit> {
    let n = spec.n();
    let last = spec.alphas()[n];
    if last.norm() == 0.0 {
        return Err(KlmError::Degenerate(
            "cannot split a vanishing last amplitude".into(),
        ));
    }
    let mut raw = spec.alphas()[..n].to_vec();
    raw.push(last * FRAC_1_SQRT_2);
    raw.push(last * FRAC_1_SQRT_2);
    let new_spec = KlmSpec::new(&raw)?;

    let step = PrepStep {
        control_qubit: n,
        new_qubit: n + 1,
        required_ratio: 1.0,
        gate_phase: FRAC_PI_2,
        signal: QubitParams::new(FRAC_PI_4, 0.0)?,
        post_rotation: elementary(Elementary::Hadamard)?,
    };
    Ok(EqualSplit {
        spec: new_spec,
        step,
        // the |1>^n branch leaves the gadget as e^{i pi/4}(|0> - i|1>)/sqrt2
        phase_corrections: [-FRAC_PI_4, FRAC_PI_2],
        success: p_cphase(FRAC_PI_2)?,
    })
}

/// Applies the split gadget to the dense embedding of `input` and reports the
/// fidelity with `split.spec`.
pub fn simulate_equal_split(input: &KlmSpec, split: &EqualSplit) -> Result<(StateVector, f64)> {
    let fresh = StateVector::product_state(&[QubitParams::new(0.0, 0.0)?])?;
    let mut state = input.to_state_vector()?.tensor(&fresh)?;
    let hadamard = elementary(Elementary::Hadamard)?;
    let step = &split.step;
    state.apply_1q_mut(step.new_qubit, &hadamard)?;
    state.apply_cphase_mut(step.control_qubit, step.new_qubit, step.gate_phase)?;
    state.apply_1q_mut(step.new_qubit, &step.post_rotation)?;
    state.apply_1q_mut(step.control_qubit, &phase_gate(split.phase_corrections[0]))?;
    state.apply_1q_mut(step.new_qubit, &phase_gate(split.phase_corrections[1]))?;
    let fidelity = split.spec.fidelity_of(&state)?;
    Ok((state, fidelity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klm::Family;
    use approx::assert_abs_diff_eq;

    #[test]
    fn uniform_two_qubit_split() {
        let u = KlmSpec::family(Family::Uniform, 2).unwrap();
        let split = extend_equal_split(&u).unwrap();
        let expected = KlmSpec::from_real(&[1.0, 1.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        for (a, b) in split.spec.alphas().iter().zip(expected.alphas()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(split.success, 0.09048, epsilon = 1e-5);
        let (_, fid) = simulate_equal_split(&u, &split).unwrap();
        assert!(fid >= 1.0 - 1e-9);
        // not the uniform three-qubit state
        assert_ne!(split.spec, KlmSpec::family(Family::Uniform, 3).unwrap());
    }

    #[test]
    fn pure_split_of_one_qubit() {
        let s = KlmSpec::from_real(&[0.0, 1.0]).unwrap();
        let split = extend_equal_split(&s).unwrap();
        let a = split.spec.alphas();
        assert_eq!(a[0].norm(), 0.0);
        assert_abs_diff_eq!(a[1].re, FRAC_1_SQRT_2, epsilon = 1e-12);
        assert_abs_diff_eq!(a[2].re, FRAC_1_SQRT_2, epsilon = 1e-12);
        let (_, fid) = simulate_equal_split(&s, &split).unwrap();
        assert!(fid >= 1.0 - 1e-9);
    }

    #[test]
    fn complex_last_amplitude() {
        let s = KlmSpec::new(&[
            crate::state::ComplexAmp::new(0.5, 0.0),
            crate::state::ComplexAmp::new(0.1, 0.4),
            crate::state::ComplexAmp::new(-0.3, 0.6),
        ])
        .unwrap();
        let split = extend_equal_split(&s).unwrap();
        let (_, fid) = simulate_equal_split(&s, &split).unwrap();
        assert!(fid >= 1.0 - 1e-9);
    }

    #[test]
    fn zero_last_amplitude_rejected() {
        let s = KlmSpec::from_real(&[1.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            extend_equal_split(&s),
            Err(KlmError::Degenerate(_))
        ));
    }
}
