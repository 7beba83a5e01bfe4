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

//! Exhaustive reference planner.
//!
//! Every step scans a uniform grid of gate phases over `[0, pi]`. For each phase the
//! signal angle is located by scanning a uniform grid over `[0, pi/4]` on the
//! *simulated* two-qubit split angle, then bisecting inside the bracketing cell.
//! All combinations of per-step candidates are then simulated as a full chain and
//! kept when they reach the oracle fidelity. Nothing here goes through the
//! closed-form phase rule or signal-angle inversion used by [`super::plan`].

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rayon::prelude::*;

use crate::error::{KlmError, Result};
use crate::gate::signal_basis_rotation;
use crate::klm::KlmSpec;
use crate::planner::{klm_amplitudes, phase_fix_angles, run_chain, PrepPlan, PrepStep};
use crate::state::{QubitParams, StateVector};
use crate::success::{p_cphase, plan_success};

/// Largest target the oracle accepts; cost grows as `grid^(2(n-1))` in the worst case.
pub const ORACLE_MAX_QUBITS: usize = 4;

/// Infidelity a candidate chain may have and still count as a preparation.
pub const ORACLE_FIDELITY: f64 = 1e-6;

const BISECTION_STEPS: usize = 64;

#[derive(Debug, Clone, Copy)]
struct Candidate {
    phase: f64,
    theta: f64,
    p: f64,
}

/// `atan2(|amp(11)|, |amp(10)|)` after one simulated step with the control in `|1>`.
fn simulated_split_angle(theta: f64, phase: f64) -> Result<f64> {
    let control = QubitParams::new(FRAC_PI_2, 0.0)?;
    let signal = QubitParams::new(theta, 0.0)?;
    let mut state = StateVector::product_state(&[control, signal])?;
    state.apply_cphase_mut(1, 2, phase)?;
    state.apply_1q_mut(2, &signal_basis_rotation(theta, 0.0)?)?;
    let a = state.amplitudes();
    Ok(a[3].norm().atan2(a[2].norm()))
}

fn grid_point(lo: f64, hi: f64, k: usize, grid: usize) -> f64 {
    if k + 1 == grid {
        hi
    } else {
        lo + (hi - lo) * k as f64 / (grid - 1) as f64
    }
}

/// Signal angle reaching `target` at `phase`, or `None` when the phase is too small.
fn locate_theta(target: f64, phase: f64, grid: usize) -> Result<Option<f64>> {
    let mut prev = 0.0;
    for k in 0..grid {
        let theta = grid_point(0.0, FRAC_PI_4, k, grid);
        let angle = simulated_split_angle(theta, phase)?;
        if angle >= target - 1e-12 {
            if k == 0 {
                return Ok(Some(theta));
            }
            let (mut lo, mut hi) = (prev, theta);
            for _ in 0..BISECTION_STEPS {
                let mid = 0.5 * (lo + hi);
                if simulated_split_angle(mid, phase)? < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(Some(hi));
        }
        prev = theta;
    }
    Ok(None)
}

fn step_candidates(target: f64, grid: usize) -> Result<Vec<Candidate>> {
    let found: Vec<Option<Candidate>> = (0..grid)
        .into_par_iter()
        .map(|k| {
            let phase = grid_point(0.0, PI, k, grid);
            Ok(locate_theta(target, phase, grid)?.map(|theta| Candidate {
                phase,
                theta,
                p: p_cphase(phase).expect("grid phase in range"),
            }))
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Candidate> = found.into_iter().flatten().collect();
    out.sort_by(|a, b| {
        b.p.total_cmp(&a.p)
            .then(a.phase.total_cmp(&b.phase))
            .then(a.theta.total_cmp(&b.theta))
    });
    Ok(out)
}

struct Search<'a> {
    spec: &'a KlmSpec,
    first: QubitParams,
    candidates: Vec<Vec<Candidate>>,
    /// `suffix_bound[i]` = product of the best `p` of steps `i..`.
    suffix_bound: Vec<f64>,
    chosen: Vec<Candidate>,
    best: Option<(f64, Vec<Candidate>, Vec<f64>)>,
}

fn key(c: &[Candidate]) -> Vec<f64> {
    c.iter().flat_map(|c| [c.phase, c.theta]).collect()
}

fn lexicographically_smaller(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

fn to_steps(chosen: &[Candidate], spec_ratios: &[f64]) -> Result<Vec<PrepStep>> {
    chosen
        .iter()
        .zip(spec_ratios)
        .enumerate()
        .map(|(i, (c, &r))| {
            let signal = QubitParams::new(c.theta, 0.0)?;
            Ok(PrepStep {
                control_qubit: i + 1,
                new_qubit: i + 2,
                required_ratio: r,
                gate_phase: c.phase,
                signal,
                post_rotation: signal_basis_rotation(c.theta, 0.0)?,
            })
        })
        .collect()
}

impl Search<'_> {
    /// Phase-fix layer of the current choice when the chain reaches the oracle fidelity.
    fn evaluate(&self) -> Result<Option<Vec<f64>>> {
        let ratios = vec![f64::NAN; self.chosen.len()];
        let steps = to_steps(&self.chosen, &ratios)?;
        let raw = run_chain(&self.first, &steps, &[])?;
        let fix = phase_fix_angles(&klm_amplitudes(&raw), self.spec);
        let state = run_chain(&self.first, &steps, &fix)?;
        if self.spec.fidelity_of(&state)? >= 1.0 - ORACLE_FIDELITY {
            Ok(Some(fix))
        } else {
            Ok(None)
        }
    }

    fn beaten(&self, depth: usize, partial: f64) -> bool {
        let Some((best, best_choice, _)) = &self.best else {
            return false;
        };
        if partial * self.suffix_bound[depth] < *best {
            return true;
        }
        depth == self.candidates.len()
            && partial == *best
            && !lexicographically_smaller(&key(&self.chosen), &key(best_choice))
    }

    fn visit(&mut self, depth: usize, partial: f64) -> Result<()> {
        if self.beaten(depth, partial) {
            return Ok(());
        }
        if depth == self.candidates.len() {
            if let Some(fix) = self.evaluate()? {
                self.best = Some((partial, self.chosen.clone(), fix));
            }
            return Ok(());
        }
        for idx in 0..self.candidates[depth].len() {
            let c = self.candidates[depth][idx];
            self.chosen.push(c);
            self.visit(depth + 1, partial * c.p)?;
            self.chosen.pop();
        }
        Ok(())
    }
}

/// Best plan found by exhaustive grid search with `grid` points per axis.
pub fn brute_force_plan(spec: &KlmSpec, grid: usize) -> Result<PrepPlan> {
    let n = spec.n();
    if n > ORACLE_MAX_QUBITS {
        return Err(KlmError::Size(format!(
            "brute-force search supports at most {ORACLE_MAX_QUBITS} qubits, got {n}"
        )));
    }
    if grid < 2 {
        return Err(KlmError::Validation(format!(
            "grid needs at least 2 points per axis, got {grid}"
        )));
    }
    let alphas = spec.alphas();
    let first = QubitParams::new(spec.tail_norm(1)?.atan2(alphas[0].norm()), 0.0)?;
    let mut targets = Vec::with_capacity(n.saturating_sub(1));
    let mut ratios = Vec::with_capacity(n.saturating_sub(1));
    for (i, alpha) in alphas.iter().enumerate().take(n).skip(1) {
        let tail = spec.tail_norm(i + 1)?;
        let a = alpha.norm();
        targets.push(tail.atan2(a));
        ratios.push(if tail == 0.0 { 0.0 } else { tail / a });
    }
    let candidates = targets
        .iter()
        .map(|&t| step_candidates(t, grid))
        .collect::<Result<Vec<_>>>()?;
    if candidates.iter().any(|c| c.is_empty()) {
        return Err(KlmError::Validation(
            "no feasible grid point for some step".into(),
        ));
    }
    let mut suffix_bound = vec![1.0; candidates.len() + 1];
    for i in (0..candidates.len()).rev() {
        suffix_bound[i] = suffix_bound[i + 1] * candidates[i][0].p;
    }
    let mut search = Search {
        spec,
        first,
        candidates,
        suffix_bound,
        chosen: Vec::new(),
        best: None,
    };
    search.visit(0, 1.0)?;
    let (_, chosen, phase_fix) = search.best.ok_or_else(|| {
        KlmError::Validation(format!(
            "no grid combination reaches fidelity 1 - {ORACLE_FIDELITY:e}"
        ))
    })?;
    let steps = to_steps(&chosen, &ratios)?;
    let phases: Vec<f64> = steps.iter().map(|s| s.gate_phase).collect();
    Ok(PrepPlan {
        target: spec.clone(),
        first_qubit: first,
        steps,
        phase_fix,
        report: plan_success(&phases)?,
    })
}
