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

//! JSON documents for plans, verification and threshold reports.
//!
//! Reals are written with 12 significant digits; the unbounded ratio is the string `"inf"`.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::klm::SpecDocument;
use crate::planner::PrepPlan;
use crate::state::{QubitParams, Unitary2};

/// Rounds to 12 significant digits; non-finite values pass through.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Text form used in CSV cells: 12 significant digits, `inf` for `+inf`.
pub fn format_real(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{}", round_sig12(x))
    }
}

/// A real that serializes with 12 significant digits and maps `+inf` to `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(round_sig12(self.0))
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RealVisitor;

        impl Visitor<'_> for RealVisitor {
            type Value = Real;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Real, E> {
                Ok(Real(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Real, E> {
                Ok(Real(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Real, E> {
                Ok(Real(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Real, E> {
                match v {
                    "inf" => Ok(Real(f64::INFINITY)),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        d.deserialize_any(RealVisitor)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QubitDocument {
    pub theta: Real,
    pub phi: Real,
}

impl From<&QubitParams> for QubitDocument {
    fn from(q: &QubitParams) -> Self {
        Self {
            theta: Real(q.theta()),
            phi: Real(q.phi()),
        }
    }
}

/// Row-major 2x2 matrix of `[re, im]` pairs.
pub type MatrixDocument = [[[Real; 2]; 2]; 2];

fn matrix_document(u: &Unitary2) -> MatrixDocument {
    u.matrix().map(|row| row.map(|z| [Real(z.re), Real(z.im)]))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepDocument {
    pub control_qubit: usize,
    pub new_qubit: usize,
    pub required_ratio: Real,
    pub gate_phase: Real,
    pub signal: QubitDocument,
    pub post_rotation: MatrixDocument,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepSuccessDocument {
    pub phase: Real,
    pub p: Real,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuccessDocument {
    pub per_step: Vec<StepSuccessDocument>,
    pub total: Real,
    pub baseline: Real,
}

/// Serialized [`PrepPlan`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanDocument {
    pub target: SpecDocument,
    pub first_qubit: QubitDocument,
    pub steps: Vec<StepDocument>,
    pub phase_fix: Vec<Real>,
    pub success: SuccessDocument,
}

impl From<&PrepPlan> for PlanDocument {
    fn from(plan: &PrepPlan) -> Self {
        let mut target = SpecDocument::from(&plan.target);
        for pair in &mut target.amplitudes {
            *pair = pair.map(round_sig12);
        }
        Self {
            target,
            first_qubit: (&plan.first_qubit).into(),
            steps: plan
                .steps
                .iter()
                .map(|s| StepDocument {
                    control_qubit: s.control_qubit,
                    new_qubit: s.new_qubit,
                    required_ratio: Real(s.required_ratio),
                    gate_phase: Real(s.gate_phase),
                    signal: (&s.signal).into(),
                    post_rotation: matrix_document(&s.post_rotation),
                })
                .collect(),
            phase_fix: plan.phase_fix.iter().copied().map(Real).collect(),
            success: SuccessDocument {
                per_step: plan
                    .report
                    .per_step
                    .iter()
                    .map(|s| StepSuccessDocument {
                        phase: Real(s.phase),
                        p: Real(s.p),
                    })
                    .collect(),
                total: Real(plan.report.total),
                baseline: Real(plan.report.baseline),
            },
        }
    }
}

impl PlanDocument {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plan serializes")
    }
}

/// Outcome of planning plus simulation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationDocument {
    pub fidelity: Real,
    pub total: Real,
    pub baseline: Real,
    pub improvement_percent: Real,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThresholdDocument {
    pub r_star: Real,
    pub paper_value: Real,
}
