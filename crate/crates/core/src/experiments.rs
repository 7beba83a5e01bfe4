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

//! Sweeps and reports behind the command-line tool.

use std::f64::consts::PI;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{KlmError, Result};
use crate::gate::max_ratio;
use crate::io::{format_real, Real, ThresholdDocument, VerificationDocument};
use crate::klm::KlmSpec;
use crate::planner::{
    optimal_phase, plan, simulate_plan, step_params, strategy_threshold, Strategy,
};
use crate::success::p_cphase;

/// Ratio threshold printed next to the computed one in threshold reports.
pub const PUBLISHED_THRESHOLD: f64 = 0.54;

pub const RATIO_HEADER: &str = "phi,max_ratio,p_cphase";
pub const SUCCESS_HEADER: &str = "r,p_opt,phi_opt,theta_s_opt";

/// Reachable split ratio and gate success at one phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRow {
    pub phi: f64,
    pub max_ratio: f64,
    pub p_cphase: f64,
}

/// Best success and its settings at one required ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuccessRow {
    pub r: f64,
    pub p_opt: f64,
    pub phi_opt: f64,
    pub theta_s_opt: f64,
}

/// `points` uniform samples of `[lo, hi]`, both ends included exactly.
pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| {
            if k + 1 == points {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (points - 1) as f64
            }
        })
        .collect()
}

pub fn sweep_ratio(phi_min: f64, phi_max: f64, points: usize) -> Result<Vec<RatioRow>> {
    if !(0.0 <= phi_min && phi_min < phi_max && phi_max <= PI) {
        return Err(KlmError::Validation(format!(
            "phase range must satisfy 0 <= min < max <= pi, got [{phi_min}, {phi_max}]"
        )));
    }
    if points < 2 {
        return Err(KlmError::Validation(format!(
            "need at least 2 points, got {points}"
        )));
    }
    uniform_grid(phi_min, phi_max, points)
        .into_par_iter()
        .map(|phi| {
            Ok(RatioRow {
                phi,
                max_ratio: max_ratio(phi)?,
                p_cphase: p_cphase(phi)?,
            })
        })
        .collect()
}

pub fn sweep_success(r_min: f64, r_max: f64, points: usize) -> Result<Vec<SuccessRow>> {
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
        return Err(KlmError::Validation(format!(
            "ratio range must satisfy 0 < min < max < inf, got [{r_min}, {r_max}]"
        )));
    }
    if points < 2 {
        return Err(KlmError::Validation(format!(
            "need at least 2 points, got {points}"
        )));
    }
    uniform_grid(r_min, r_max, points)
        .into_par_iter()
        .map(|r| {
            let choice = optimal_phase(r)?;
            Ok(SuccessRow {
                r,
                p_opt: choice.p,
                phi_opt: choice.phase,
                theta_s_opt: step_params(r, choice.phase)?.theta(),
            })
        })
        .collect()
}

pub fn write_ratio_csv<W: Write>(rows: &[RatioRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{RATIO_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{}",
            format_real(row.phi),
            format_real(row.max_ratio),
            format_real(row.p_cphase)
        )?;
    }
    Ok(())
}

pub fn write_success_csv<W: Write>(rows: &[SuccessRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{SUCCESS_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            format_real(row.r),
            format_real(row.p_opt),
            format_real(row.phi_opt),
            format_real(row.theta_s_opt)
        )?;
    }
    Ok(())
}

/// Plan, simulate and compare against the all-pi baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verification {
    pub fidelity: f64,
    pub total: f64,
    pub baseline: f64,
    pub improvement_percent: f64,
}

impl Verification {
    pub fn document(&self) -> VerificationDocument {
        VerificationDocument {
            fidelity: Real(self.fidelity),
            total: Real(self.total),
            baseline: Real(self.baseline),
            improvement_percent: Real(self.improvement_percent),
        }
    }
}

pub fn verify(spec: &KlmSpec, strategy: Strategy) -> Result<Verification> {
    let p = plan(spec, strategy)?;
    let sim = simulate_plan(&p)?;
    Ok(Verification {
        fidelity: sim.fidelity,
        total: p.report.total,
        baseline: p.report.baseline,
        improvement_percent: p.report.improvement_percent(),
    })
}

pub fn threshold_report() -> ThresholdDocument {
    ThresholdDocument {
        r_star: Real(strategy_threshold()),
        paper_value: Real(PUBLISHED_THRESHOLD),
    }
}

/// Probability as a percentage with two significant digits, e.g. `0.19%`.
pub fn format_percent(p: f64) -> String {
    let pct = 100.0 * p;
    if pct == 0.0 || !pct.is_finite() {
        return format!("{pct}%");
    }
    let digits = (1 - pct.abs().log10().floor() as i32).max(0) as usize;
    format!("{pct:.digits$}%")
}
