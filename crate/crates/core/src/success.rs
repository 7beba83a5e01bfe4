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

//! Heralded success probability of a linear-optical controlled-phase gate and
//! of whole preparation plans.

use std::f64::consts::PI;

use crate::error::{KlmError, Result};
use crate::gate::check_phase;

/// Optimal post-selected success probability of a controlled phase `phase` in `[0, pi]`:
///
/// `(1 + 2|sin(p/2)| + 2^{3/2} sin((pi - p)/4) |sin(p/2)|^{1/2})^{-2}`.
pub fn p_cphase(phase: f64) -> Result<f64> {
    check_phase(phase)?;
    let s = (phase / 2.0).sin().abs();
    let denom = 1.0 + 2.0 * s + 2f64.powf(1.5) * ((PI - phase) / 4.0).sin() * s.sqrt();
    Ok(denom.powi(-2))
}

/// Success probability of a single gate in a plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSuccess {
    pub phase: f64,
    pub p: f64,
}

/// Plan-level accounting: product over all gates, and the all-pi reference.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessReport {
    pub per_step: Vec<StepSuccess>,
    pub total: f64,
    pub baseline: f64,
}

impl SuccessReport {
    /// Relative gain over the all-pi baseline, in percent.
    pub fn improvement_percent(&self) -> f64 {
        100.0 * (self.total / self.baseline - 1.0)
    }
}

pub fn plan_success(phases: &[f64]) -> Result<SuccessReport> {
    let per_step = phases
        .iter()
        .map(|&phase| {
            Ok(StepSuccess {
                phase,
                p: p_cphase(phase)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = per_step.iter().map(|s| s.p).product();
    let baseline = p_cphase(PI)?.powi(phases.len() as i32);
    Ok(SuccessReport {
        per_step,
        total,
        baseline,
    })
}

/// `p_cphase(pi)^(n-1)`.
pub fn franson_baseline(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(KlmError::Validation(
            "qubit count must be at least 1".into(),
        ));
    }
    Ok(p_cphase(PI)?.powi(n as i32 - 1))
}
