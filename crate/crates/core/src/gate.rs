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

//! Closed-form algebra of one preparation step.
//!
//! A signal qubit `|s> = cos(ts)|0> + e^{i ps} sin(ts)|1>` passes a controlled phase
//! together with a control in `|1>`. The output decomposes as `tau |s> + eps |s_perp>`,
//! and the signal-basis rotation sends `|s> -> |0>`, `|s_perp> -> |1>`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{KlmError, Result};
use crate::state::{ComplexAmp, Unitary2};

const SLACK: f64 = 1e-12;

/// Overlap coefficients of the conditional signal map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauEpsilon {
    pub tau: ComplexAmp,
    pub epsilon: ComplexAmp,
}

impl TauEpsilon {
    /// `|epsilon / tau|`, `+inf` when `tau` vanishes.
    pub fn ratio(&self) -> f64 {
        let t = self.tau.norm();
        let e = self.epsilon.norm();
        if t == 0.0 {
            if e == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            e / t
        }
    }
}

pub(crate) fn check_phase(phase: f64) -> Result<()> {
    if !(0.0..=PI).contains(&phase) {
        return Err(KlmError::Validation(format!(
            "gate phase {phase} outside [0, pi]"
        )));
    }
    Ok(())
}

fn check_theta_s(theta_s: f64, upper: f64) -> Result<f64> {
    if !theta_s.is_finite() || !(-SLACK..=upper + SLACK).contains(&theta_s) {
        return Err(KlmError::Validation(format!(
            "signal theta {theta_s} outside [0, {upper}]"
        )));
    }
    Ok(theta_s.clamp(0.0, upper))
}

/// `tau = cos^2 ts + e^{i phase} sin^2 ts`, `eps = e^{i ps} sin ts cos ts (1 - e^{i phase})`.
pub fn tau_epsilon(theta_s: f64, phi_s: f64, phase: f64) -> Result<TauEpsilon> {
    let theta_s = check_theta_s(theta_s, FRAC_PI_2)?;
    check_phase(phase)?;
    if !phi_s.is_finite() {
        return Err(KlmError::Validation("signal phi must be finite".into()));
    }
    let (s, c) = theta_s.sin_cos();
    let gate = ComplexAmp::from_polar(1.0, phase);
    let one = ComplexAmp::new(1.0, 0.0);
    Ok(TauEpsilon {
        tau: c * c + gate * (s * s),
        epsilon: ComplexAmp::from_polar(s * c, phi_s) * (one - gate),
    })
}

/// Rotation `|0><s| + |1><s_perp|` with `|s_perp> = e^{-i ps} sin ts |0> - cos ts |1>`.
pub fn signal_basis_rotation(theta_s: f64, phi_s: f64) -> Result<Unitary2> {
    let theta_s = check_theta_s(theta_s, FRAC_PI_2)?;
    if !phi_s.is_finite() {
        return Err(KlmError::Validation("signal phi must be finite".into()));
    }
    let (s, c) = theta_s.sin_cos();
    Unitary2::new([
        [ComplexAmp::new(c, 0.0), ComplexAmp::from_polar(s, -phi_s)],
        [ComplexAmp::from_polar(s, phi_s), ComplexAmp::new(-c, 0.0)],
    ])
}

/// `(|alpha_1|^2 + |alpha_2|^2) / |alpha_0|^2 = tan^2(theta_c)`.
pub fn control_ratio(theta_c: f64) -> Result<f64> {
    if !theta_c.is_finite() || !(0.0..=FRAC_PI_2).contains(&theta_c) {
        return Err(KlmError::Validation(format!(
            "control theta {theta_c} outside [0, pi/2)"
        )));
    }
    if theta_c == FRAC_PI_2 {
        return Err(KlmError::UnboundedRatio(
            "control theta pi/2 leaves alpha_0 = 0".into(),
        ));
    }
    Ok(theta_c.tan().powi(2))
}

/// `|alpha_2| / |alpha_1| = tan(2 ts)` at gate phase pi; `+inf` at `ts = pi/4`.
pub fn pi_phase_ratio(theta_s: f64) -> Result<f64> {
    let theta_s = check_theta_s(theta_s, FRAC_PI_4)?;
    if theta_s == FRAC_PI_4 {
        return Ok(f64::INFINITY);
    }
    Ok((2.0 * theta_s).tan())
}

/// Largest `|eps / tau|` reachable at `phase`: `tan(phase / 2)`, `+inf` at pi.
pub fn max_ratio(phase: f64) -> Result<f64> {
    check_phase(phase)?;
    if phase == PI {
        return Ok(f64::INFINITY);
    }
    Ok((phase / 2.0).tan())
}

/// Named single-qubit gates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elementary {
    Hadamard,
    /// `diag(1, e^{i delta})`, `delta` in `[-pi, pi)`.
    Phase(f64),
}

pub fn elementary(kind: Elementary) -> Result<Unitary2> {
    match kind {
        Elementary::Hadamard => {
            let h = ComplexAmp::new(FRAC_1_SQRT_2, 0.0);
            Unitary2::new([[h, h], [h, -h]])
        }
        Elementary::Phase(delta) => {
            if !(-PI..PI).contains(&delta) {
                return Err(KlmError::Validation(format!(
                    "phase gate angle {delta} outside [-pi, pi)"
                )));
            }
            Ok(phase_gate(delta))
        }
    }
}

/// `diag(1, e^{i delta})` for any finite `delta`.
pub(crate) fn phase_gate(delta: f64) -> Unitary2 {
    Unitary2::new([
        [ComplexAmp::new(1.0, 0.0), ComplexAmp::new(0.0, 0.0)],
        [
            ComplexAmp::new(0.0, 0.0),
            ComplexAmp::from_polar(1.0, delta),
        ],
    ])
    .expect("phase gate is unitary")
}
