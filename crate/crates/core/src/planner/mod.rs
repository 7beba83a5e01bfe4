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

//! Preparation plans for arbitrary KLM targets.
//!
//! The chain adds one qubit per step: qubit `i` (carrying the not-yet-split tail
//! of the target) controls a tunable phase gate on a fresh signal qubit `i+1`,
//! after which the signal is rotated into its own basis. The step splits the
//! tail amplitude into `tau * tail` on `|1>^i|0>` and `eps * tail` on `|1>^(i+1)`.
//! Signal phases are left at zero; one closing layer of phase gates repairs all
//! amplitude arguments.

mod extend;
mod oracle;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{KlmError, Result};
use crate::gate::{check_phase, max_ratio, phase_gate, signal_basis_rotation, tau_epsilon};
use crate::klm::KlmSpec;
use crate::state::{wrap_angle, ComplexAmp, QubitParams, StateVector, Unitary2, MAX_QUBITS};
use crate::success::{p_cphase, plan_success, SuccessReport};

pub use extend::{extend_equal_split, simulate_equal_split, EqualSplit};
pub use oracle::{brute_force_plan, ORACLE_FIDELITY, ORACLE_MAX_QUBITS};

/// Fidelity every simulated plan must reach.
pub const FIDELITY_TOL: f64 = 1e-9;

/// How each step's gate phase is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Best of the smallest feasible phase and pi.
    Optimal,
    /// Always pi.
    FransonPi,
    /// Always the smallest feasible phase `2 atan(r)`.
    MinPhase,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Optimal, Strategy::FransonPi, Strategy::MinPhase];

    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Optimal => "optimal",
            Strategy::FransonPi => "franson-pi",
            Strategy::MinPhase => "min-phase",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = KlmError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optimal" => Ok(Strategy::Optimal),
            "franson-pi" => Ok(Strategy::FransonPi),
            "min-phase" => Ok(Strategy::MinPhase),
            other => Err(KlmError::Validation(format!(
                "unknown strategy '{other}' (expected optimal, franson-pi or min-phase)"
            ))),
        }
    }
}

/// One gate of the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct PrepStep {
    /// 1-based control qubit `i`.
    pub control_qubit: usize,
    /// 1-based signal qubit `i + 1`.
    pub new_qubit: usize,
    /// Split ratio `|eps / tau|` this step must realize (`+inf` allowed).
    pub required_ratio: f64,
    pub gate_phase: f64,
    pub signal: QubitParams,
    pub post_rotation: Unitary2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrepPlan {
    pub target: KlmSpec,
    pub first_qubit: QubitParams,
    pub steps: Vec<PrepStep>,
    /// Phase-gate angles `delta_1..delta_n` of the closing layer.
    pub phase_fix: Vec<f64>,
    pub report: SuccessReport,
}

impl PrepPlan {
    pub fn n(&self) -> usize {
        self.target.n()
    }
}

/// Chosen gate phase and its success probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseChoice {
    pub phase: f64,
    pub p: f64,
}

/// Split ratios `r_i = tail(i+1) / |alpha_i|` for `i = 1..n-1`.
///
/// A zero tail yields 0 (checked first); a zero `alpha_i` under a nonzero tail yields `+inf`.
pub fn required_ratios(spec: &KlmSpec) -> Vec<f64> {
    let n = spec.n();
    (1..n)
        .map(|i| {
            let tail = spec.tail_norm(i + 1).expect("index in range");
            let a = spec.alphas()[i].norm();
            if tail == 0.0 {
                0.0
            } else if a == 0.0 {
                f64::INFINITY
            } else {
                tail / a
            }
        })
        .collect()
}

fn check_ratio(r: f64) -> Result<()> {
    if r.is_nan() || r < 0.0 {
        return Err(KlmError::Validation(format!(
            "split ratio must be non-negative, got {r}"
        )));
    }
    Ok(())
}

/// Smallest gate phase able to reach ratio `r`: `2 atan(r)`.
pub fn min_phase(r: f64) -> Result<f64> {
    check_ratio(r)?;
    if r.is_infinite() {
        return Ok(PI);
    }
    Ok((2.0 * r.atan()).min(PI))
}

/// Highest-success feasible phase for ratio `r`.
///
/// The success curve falls from 1, bottoms out inside `(0, pi)` and climbs back to
/// 1/9 at pi, so its maximum over `[2 atan r, pi]` sits on one of the two ends.
/// Ties go to pi.
pub fn optimal_phase(r: f64) -> Result<PhaseChoice> {
    let lo = min_phase(r)?;
    let p_lo = p_cphase(lo)?;
    let p_pi = p_cphase(PI)?;
    if p_lo > p_pi {
        Ok(PhaseChoice { phase: lo, p: p_lo })
    } else {
        Ok(PhaseChoice { phase: PI, p: p_pi })
    }
}

/// Ratio `r*` where the smallest feasible phase and pi succeed equally often.
///
/// Bisection on `p(2 atan r) - p(pi)` over `[0.3, 0.9]` down to a `1e-10` bracket.
pub fn strategy_threshold() -> f64 {
    static THRESHOLD: OnceLock<f64> = OnceLock::new();
    *THRESHOLD.get_or_init(|| {
        let p_pi = p_cphase(PI).expect("pi in range");
        let f = |r: f64| p_cphase(2.0 * r.atan()).expect("phase in range") - p_pi;
        let (mut lo, mut hi) = (0.3, 0.9);
        debug_assert!(f(lo) > 0.0 && f(hi) < 0.0);
        while hi - lo > 1e-10 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

/// Signal parameters realizing ratio `r` at gate phase `phase`.
///
/// With `s = sin(phase/2)`, `c = cos(phase/2)` the signal angle obeys
/// `sin 2ts = r / (s sqrt(1+r^2))`, taken on the branch `ts` in `[0, pi/4]`.
/// The form `2ts = atan2(r, sqrt((s - rc)(s + rc)))` avoids cancellation near the
/// feasibility edge and gives `tan 2ts = r` exactly at phase pi.
pub fn step_params(r: f64, phase: f64) -> Result<QubitParams> {
    check_ratio(r)?;
    check_phase(phase)?;
    if r == 0.0 {
        return QubitParams::new(0.0, 0.0);
    }
    let s = (phase / 2.0).sin();
    let c = if phase == PI {
        0.0
    } else {
        (phase / 2.0).cos()
    };
    let infeasible = || KlmError::Infeasible {
        ratio: r,
        reachable: max_ratio(phase).unwrap_or(f64::NAN),
        phase,
    };
    if r.is_infinite() {
        if c != 0.0 {
            return Err(infeasible());
        }
        return QubitParams::new(FRAC_PI_4, 0.0);
    }
    let gap = (s - r * c) * (s + r * c);
    // c carries an absolute rounding error of a few ulps from phase / 2
    if s - r * c < -(1e-12 * (s + r * c) + 8.0 * f64::EPSILON * r) {
        return Err(infeasible());
    }
    // at the minimum phase the gap is pure rounding noise; its square root is not
    let edge = (s - r * c).abs() <= 8.0 * f64::EPSILON * (s + r * c + r);
    let two_theta = if edge {
        FRAC_PI_2
    } else {
        r.atan2(gap.max(0.0).sqrt())
    };
    QubitParams::new(0.5 * two_theta, 0.0)
}

fn strategy_phase(strategy: Strategy, r: f64) -> Result<f64> {
    match strategy {
        Strategy::Optimal => Ok(optimal_phase(r)?.phase),
        Strategy::FransonPi => Ok(PI),
        Strategy::MinPhase => min_phase(r),
    }
}

/// Angle of the first qubit: `|alpha_0|` on `|0>`, the whole remaining tail on `|1>`.
fn first_qubit_params(spec: &KlmSpec) -> Result<QubitParams> {
    let tail = spec.tail_norm(1)?;
    QubitParams::new(tail.atan2(spec.alphas()[0].norm()), 0.0)
}

/// Angles `delta_1..delta_n` so that `diag(1, e^{i delta_k})` on every qubit `k`
/// turns `achieved` into `target` up to a global phase. The layer shifts the
/// argument of `alpha_j` by `delta_1 + ... + delta_j`.
pub fn phase_fix_angles(achieved: &[ComplexAmp], target: &KlmSpec) -> Vec<f64> {
    let alphas = target.alphas();
    debug_assert_eq!(achieved.len(), alphas.len());
    let diff: Vec<Option<f64>> = alphas
        .iter()
        .zip(achieved)
        .map(|(t, a)| (t.norm() > 0.0).then(|| t.arg() - a.arg()))
        .collect();
    let reference = diff.iter().flatten().next().copied().unwrap_or(0.0);
    let mut cumulative = vec![0.0; alphas.len()];
    for j in 1..alphas.len() {
        cumulative[j] = match diff[j] {
            Some(d) => wrap_angle(d - reference),
            None => cumulative[j - 1],
        };
    }
    (1..alphas.len())
        .map(|k| wrap_angle(cumulative[k] - cumulative[k - 1]))
        .collect()
}

/// Builds the preparation chain for `spec`.
pub fn plan(spec: &KlmSpec, strategy: Strategy) -> Result<PrepPlan> {
    let n = spec.n();
    if n > MAX_QUBITS {
        return Err(KlmError::Size(format!(
            "{n} qubits exceed the simulator limit of {MAX_QUBITS}"
        )));
    }
    let first_qubit = first_qubit_params(spec)?;

    let mut steps = Vec::with_capacity(n - 1);
    for (idx, &r) in required_ratios(spec).iter().enumerate() {
        let gate_phase = strategy_phase(strategy, r)?;
        let signal = step_params(r, gate_phase)?;
        steps.push(PrepStep {
            control_qubit: idx + 1,
            new_qubit: idx + 2,
            required_ratio: r,
            gate_phase,
            signal,
            post_rotation: signal_basis_rotation(signal.theta(), signal.phi())?,
        });
    }

    let achieved = closed_form_amplitudes(&first_qubit, &steps)?;
    let phase_fix = phase_fix_angles(&achieved, spec);
    let phases: Vec<f64> = steps.iter().map(|s| s.gate_phase).collect();
    Ok(PrepPlan {
        target: spec.clone(),
        first_qubit,
        steps,
        phase_fix,
        report: plan_success(&phases)?,
    })
}

/// KLM amplitudes produced by the chain before the phase-fix layer.
pub fn closed_form_amplitudes(first: &QubitParams, steps: &[PrepStep]) -> Result<Vec<ComplexAmp>> {
    let [a0, mut carry] = first.amplitudes();
    let mut out = vec![a0];
    for step in steps {
        let te = tau_epsilon(step.signal.theta(), step.signal.phi(), step.gate_phase)?;
        out.push(carry * te.tau);
        carry *= te.epsilon;
    }
    out.push(carry);
    Ok(out)
}

/// Simulated final state of a plan and its fidelity with the target.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub state: StateVector,
    pub fidelity: f64,
}

/// Runs the chain on the dense simulator.
pub fn simulate_plan(plan: &PrepPlan) -> Result<Simulation> {
    let state = run_chain(&plan.first_qubit, &plan.steps, &plan.phase_fix)?;
    let fidelity = plan.target.fidelity_of(&state)?;
    Ok(Simulation { state, fidelity })
}

pub(crate) fn run_chain(
    first: &QubitParams,
    steps: &[PrepStep],
    phase_fix: &[f64],
) -> Result<StateVector> {
    let inputs: Vec<QubitParams> = std::iter::once(*first)
        .chain(steps.iter().map(|s| s.signal))
        .collect();
    let mut state = StateVector::product_state(&inputs)?;
    for step in steps {
        state.apply_cphase_mut(step.control_qubit, step.new_qubit, step.gate_phase)?;
        state.apply_1q_mut(step.new_qubit, &step.post_rotation)?;
    }
    for (k, &delta) in phase_fix.iter().enumerate() {
        if delta != 0.0 {
            state.apply_1q_mut(k + 1, &phase_gate(delta))?;
        }
    }
    Ok(state)
}

/// Amplitudes of `state` on the KLM basis states `|1>^j|0>^(n-j)`.
pub fn klm_amplitudes(state: &StateVector) -> Vec<ComplexAmp> {
    let n = state.num_qubits();
    (0..=n)
        .map(|j| state.amplitudes()[KlmSpec::basis_index(n, j)])
        .collect()
}
