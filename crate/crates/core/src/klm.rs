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

//! Target KLM states `sum_j alpha_j |1>^j |0>^(n-j)`.

use serde::{Deserialize, Serialize};

use crate::error::{KlmError, Result};
use crate::state::{fidelity, ComplexAmp, StateVector, MAX_QUBITS};

/// Normalized, phase-canonical amplitude vector `alpha_0..alpha_n` of an n-qubit KLM state.
///
/// The first nonzero amplitude is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct KlmSpec {
    alphas: Vec<ComplexAmp>,
}

/// Named amplitude families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `alpha_j = 1/sqrt(n+1)`.
    Uniform,
    /// Two-qubit `(r, 1, r)`, with `r = |alpha_0/alpha_1|`.
    Triangular2 { ratio: f64 },
    /// Four-qubit `(1, 3, 6, 3, 1)`.
    Triangular4,
}

impl KlmSpec {
    /// Normalizes `raw` and rotates its global phase so the first nonzero entry is real positive.
    pub fn new(raw: &[ComplexAmp]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(KlmError::Size(format!(
                "a KLM spec needs at least 2 amplitudes, got {}",
                raw.len()
            )));
        }
        if raw.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(KlmError::Validation("non-finite amplitude".into()));
        }
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(KlmError::Degenerate("all amplitudes are zero".into()));
        }
        let lead = raw.iter().find(|z| z.norm() > 0.0).copied().unwrap();
        let rot = ComplexAmp::from_polar(1.0, -lead.arg()) / norm;
        let mut alphas: Vec<_> = raw.iter().map(|z| z * rot).collect();
        // exact real lead
        if let Some(first) = alphas.iter_mut().find(|z| z.norm() > 0.0) {
            *first = ComplexAmp::new(first.norm(), 0.0);
        }
        Ok(Self { alphas })
    }

    /// Real-amplitude convenience constructor.
    pub fn from_real(raw: &[f64]) -> Result<Self> {
        let v: Vec<_> = raw.iter().map(|&x| ComplexAmp::new(x, 0.0)).collect();
        Self::new(&v)
    }

    pub fn family(kind: Family, n: usize) -> Result<Self> {
        match kind {
            Family::Uniform => {
                if n == 0 {
                    return Err(KlmError::Validation("uniform family needs n >= 1".into()));
                }
                Self::from_real(&vec![1.0; n + 1])
            }
            Family::Triangular2 { ratio } => {
                if n != 2 {
                    return Err(KlmError::Validation(format!(
                        "triangular-2q family is defined for n = 2 only, got {n}"
                    )));
                }
                if !(ratio.is_finite() && ratio > 0.0) {
                    return Err(KlmError::Validation(format!(
                        "triangular-2q ratio must be positive and finite, got {ratio}"
                    )));
                }
                Self::from_real(&[ratio, 1.0, ratio])
            }
            Family::Triangular4 => {
                if n != 4 {
                    return Err(KlmError::Validation(format!(
                        "triangular-4q family is defined for n = 4 only, got {n}"
                    )));
                }
                Self::from_real(&[1.0, 3.0, 6.0, 3.0, 1.0])
            }
        }
    }

    /// Linear ramp `1 + min(j, n - j)` rising to the centre, normalized.
    pub fn linear_ramp(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(KlmError::Validation("ramp needs n >= 1".into()));
        }
        let raw: Vec<f64> = (0..=n).map(|j| 1.0 + j.min(n - j) as f64).collect();
        Self::from_real(&raw)
    }

    /// Qubit count `n`.
    pub fn n(&self) -> usize {
        self.alphas.len() - 1
    }

    pub fn alphas(&self) -> &[ComplexAmp] {
        &self.alphas
    }

    /// `sqrt(sum_{j >= i} |alpha_j|^2)`.
    pub fn tail_norm(&self, i: usize) -> Result<f64> {
        if i > self.n() {
            return Err(KlmError::Index(format!(
                "tail index {i} out of range 0..={}",
                self.n()
            )));
        }
        if i == 0 {
            return Ok(1.0);
        }
        Ok(self.alphas[i..]
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Basis index of `|1>^j |0>^(n-j)`.
    pub fn basis_index(n: usize, j: usize) -> usize {
        ((1usize << j) - 1) << (n - j)
    }

    /// Dense embedding of the spec.
    pub fn to_state_vector(&self) -> Result<StateVector> {
        let n = self.n();
        if n > MAX_QUBITS {
            return Err(KlmError::Size(format!(
                "{n} qubits exceed the simulator limit of {MAX_QUBITS}"
            )));
        }
        let mut amps = vec![ComplexAmp::new(0.0, 0.0); 1 << n];
        for (j, a) in self.alphas.iter().enumerate() {
            amps[Self::basis_index(n, j)] = *a;
        }
        StateVector::from_amplitudes(amps)
    }

    /// Fidelity of `state` with this target.
    pub fn fidelity_of(&self, state: &StateVector) -> Result<f64> {
        if state.num_qubits() != self.n() {
            return Err(KlmError::Size(format!(
                "state has {} qubits, spec has {}",
                state.num_qubits(),
                self.n()
            )));
        }
        fidelity(state, &self.to_state_vector()?)
    }
}

/// On-disk form `{"amplitudes": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub amplitudes: Vec<[f64; 2]>,
}

impl From<&KlmSpec> for SpecDocument {
    fn from(spec: &KlmSpec) -> Self {
        Self {
            amplitudes: spec.alphas.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<SpecDocument> for KlmSpec {
    type Error = KlmError;

    fn try_from(doc: SpecDocument) -> Result<Self> {
        let raw: Vec<_> = doc
            .amplitudes
            .iter()
            .map(|[re, im]| ComplexAmp::new(*re, *im))
            .collect();
        KlmSpec::new(&raw)
    }
}

impl KlmSpec {
    /// Parses the JSON spec format.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpecDocument = serde_json::from_str(text)
            .map_err(|e| KlmError::Validation(format!("invalid spec JSON: {e}")))?;
        doc.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SpecDocument::from(self)).expect("spec serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reals(spec: &KlmSpec) -> Vec<f64> {
        spec.alphas().iter().map(|z| z.re).collect()
    }

    #[test]
    fn make_spec_examples() {
        let s = KlmSpec::from_real(&[1.0, 1.0, 1.0]).unwrap();
        for a in reals(&s) {
            assert_abs_diff_eq!(a, 0.57735, epsilon = 1e-5);
        }
        assert_eq!(
            reals(&KlmSpec::from_real(&[1.0, 0.0]).unwrap()),
            vec![1.0, 0.0]
        );

        let t = KlmSpec::from_real(&[1.0, 3.0, 6.0, 3.0, 1.0]).unwrap();
        let n = 56f64.sqrt();
        assert_abs_diff_eq!(n, 7.48331, epsilon = 1e-5);
        for (a, raw) in reals(&t).iter().zip([1.0, 3.0, 6.0, 3.0, 1.0]) {
            assert_abs_diff_eq!(*a, raw / n, epsilon = 1e-12);
        }
    }

    #[test]
    fn make_spec_errors() {
        assert!(matches!(KlmSpec::from_real(&[1.0]), Err(KlmError::Size(_))));
        assert!(matches!(
            KlmSpec::from_real(&[0.0, 0.0, 0.0]),
            Err(KlmError::Degenerate(_))
        ));
        assert!(KlmSpec::from_real(&[f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn canonical_global_phase() {
        let raw = [
            ComplexAmp::new(0.0, 0.0),
            ComplexAmp::new(0.0, 2.0),
            ComplexAmp::new(-1.0, 0.0),
        ];
        let s = KlmSpec::new(&raw).unwrap();
        assert_eq!(s.alphas()[0], ComplexAmp::new(0.0, 0.0));
        assert_abs_diff_eq!(s.alphas()[1].im, 0.0);
        assert!(s.alphas()[1].re > 0.0);
        // relative phase between alpha_1 and alpha_2 preserved: (-1)/(2i) = i/2
        let rel = s.alphas()[2] / s.alphas()[1];
        assert_abs_diff_eq!(rel.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rel.im, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn family_examples() {
        let u = KlmSpec::family(Family::Uniform, 2).unwrap();
        for a in reals(&u) {
            assert_abs_diff_eq!(a, 0.57735, epsilon = 1e-5);
        }
        let t2 = KlmSpec::family(Family::Triangular2 { ratio: 0.25 }, 2).unwrap();
        let expected = [0.23570, 0.94281, 0.23570];
        for (a, e) in reals(&t2).iter().zip(expected) {
            assert_abs_diff_eq!(*a, e, epsilon = 1e-5);
        }
        let t4 = KlmSpec::family(Family::Triangular4, 4).unwrap();
        assert_eq!(t4, KlmSpec::from_real(&[1.0, 3.0, 6.0, 3.0, 1.0]).unwrap());
    }

    #[test]
    fn family_errors() {
        assert!(KlmSpec::family(Family::Uniform, 0).is_err());
        assert!(KlmSpec::family(Family::Triangular2 { ratio: 0.25 }, 3).is_err());
        assert!(KlmSpec::family(Family::Triangular2 { ratio: 0.0 }, 2).is_err());
        assert!(KlmSpec::family(
            Family::Triangular2 {
                ratio: f64::INFINITY
            },
            2
        )
        .is_err());
        assert!(KlmSpec::family(Family::Triangular4, 2).is_err());
    }

    #[test]
    fn linear_ramp_shape() {
        let r = KlmSpec::linear_ramp(4).unwrap();
        let expected = KlmSpec::from_real(&[1.0, 2.0, 3.0, 2.0, 1.0]).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn tail_norm_examples() {
        let u = KlmSpec::family(Family::Uniform, 2).unwrap();
        assert_abs_diff_eq!(u.tail_norm(1).unwrap(), 0.81650, epsilon = 1e-5);
        assert_eq!(u.tail_norm(0).unwrap(), 1.0);
        let t4 = KlmSpec::family(Family::Triangular4, 4).unwrap();
        assert_abs_diff_eq!(
            t4.tail_norm(2).unwrap(),
            (46.0f64 / 56.0).sqrt(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(t4.tail_norm(2).unwrap(), 0.90633, epsilon = 1e-5);
        assert!(matches!(t4.tail_norm(5), Err(KlmError::Index(_))));
    }

    #[test]
    fn state_vector_embedding() {
        let s1 = KlmSpec::from_real(&[0.6, 0.8]).unwrap();
        let v1 = s1.to_state_vector().unwrap();
        assert_abs_diff_eq!(v1.amplitudes()[0].re, 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(v1.amplitudes()[1].re, 0.8, epsilon = 1e-12);

        let u = KlmSpec::family(Family::Uniform, 2)
            .unwrap()
            .to_state_vector()
            .unwrap();
        let a = u.amplitudes();
        for idx in [0, 2, 3] {
            assert_abs_diff_eq!(a[idx].re, 0.57735, epsilon = 1e-5);
        }
        assert_eq!(a[1], ComplexAmp::new(0.0, 0.0));

        let t4 = KlmSpec::family(Family::Triangular4, 4)
            .unwrap()
            .to_state_vector()
            .unwrap();
        let nonzero: Vec<usize> = t4
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > 0.0)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(nonzero, vec![0, 8, 12, 14, 15]);
    }

    #[test]
    fn fidelity_to_spec_examples() {
        let u = KlmSpec::family(Family::Uniform, 2).unwrap();
        assert_abs_diff_eq!(
            u.fidelity_of(&u.to_state_vector().unwrap()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let s01 = StateVector::basis(2, 1).unwrap();
        assert_abs_diff_eq!(u.fidelity_of(&s01).unwrap(), 0.0, epsilon = 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::from_amplitudes(vec![
            ComplexAmp::new(h, 0.0),
            ComplexAmp::new(0.0, 0.0),
            ComplexAmp::new(0.0, 0.0),
            ComplexAmp::new(h, 0.0),
        ])
        .unwrap();
        assert_abs_diff_eq!(u.fidelity_of(&bell).unwrap(), 2.0 / 3.0, epsilon = 1e-12);
        assert!(matches!(
            u.fidelity_of(&StateVector::basis(3, 0).unwrap()),
            Err(KlmError::Size(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let t = KlmSpec::from_json(r#"{"amplitudes": [[1,0],[3,0],[6,0],[3,0],[1,0]]}"#).unwrap();
        assert_eq!(t, KlmSpec::family(Family::Triangular4, 4).unwrap());
        let back = KlmSpec::from_json(&t.to_json()).unwrap();
        for (a, b) in back.alphas().iter().zip(t.alphas()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        }
        assert!(KlmSpec::from_json(r#"{"amps": []}"#).is_err());
        assert!(KlmSpec::from_json(r#"{"amplitudes": [[0,0],[0,0]]}"#).is_err());
    }
}
