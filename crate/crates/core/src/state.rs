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

//! Dense pure-state simulation for small qubit registers.
//!
//! Basis state `|q1 q2 ... qn>` lives at index `sum_k q_k * 2^(n-k)`, so qubit 1
//! is the most significant bit of the index. Qubits are addressed 1-based
//! throughout the public API.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{KlmError, Result};

/// Scalar type of every amplitude.
pub type ComplexAmp = Complex64;

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 24;

/// Tolerance for the unitarity check on [`Unitary2`].
pub const UNITARY_TOL: f64 = 1e-9;

const ANGLE_SLACK: f64 = 1e-12;

/// Wraps an angle into `[-pi, pi)`.
pub fn wrap_angle(phi: f64) -> f64 {
    let mut x = (phi + PI).rem_euclid(2.0 * PI) - PI;
    if x >= PI {
        x -= 2.0 * PI;
    }
    x
}

/// Single-qubit pure state `cos(theta)|0> + e^{i phi} sin(theta)|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitParams {
    theta: f64,
    phi: f64,
}

impl QubitParams {
    /// Builds the parameters, canonicalizing `phi` into `[-pi, pi)`.
    ///
    /// `theta` must lie in `[0, pi/2]`; values within `1e-12` of an end are clamped.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(KlmError::Validation(format!(
                "qubit angles must be finite (theta={theta}, phi={phi})"
            )));
        }
        if !(-ANGLE_SLACK..=FRAC_PI_2 + ANGLE_SLACK).contains(&theta) {
            return Err(KlmError::Validation(format!(
                "theta={theta} outside [0, pi/2]"
            )));
        }
        Ok(Self {
            theta: theta.clamp(0.0, FRAC_PI_2),
            phi: wrap_angle(phi),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Amplitudes of `|0>` and `|1>`.
    pub fn amplitudes(&self) -> [ComplexAmp; 2] {
        [
            ComplexAmp::new(self.theta.cos(), 0.0),
            ComplexAmp::from_polar(self.theta.sin(), self.phi),
        ]
    }
}

/// A 2x2 unitary, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2([[ComplexAmp; 2]; 2]);

impl Unitary2 {
    /// Validates `m` against `U^dagger U = I` within [`UNITARY_TOL`].
    pub fn new(m: [[ComplexAmp; 2]; 2]) -> Result<Self> {
        if m.iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(KlmError::Validation("matrix has non-finite entries".into()));
        }
        let u = Self(m);
        let dev = u.unitarity_defect();
        if dev > UNITARY_TOL {
            return Err(KlmError::Validation(format!(
                "matrix is not unitary (max |U^dagger U - I| = {dev:e})"
            )));
        }
        Ok(u)
    }

    pub fn identity() -> Self {
        let one = ComplexAmp::new(1.0, 0.0);
        let zero = ComplexAmp::new(0.0, 0.0);
        Self([[one, zero], [zero, one]])
    }

    pub fn matrix(&self) -> &[[ComplexAmp; 2]; 2] {
        &self.0
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ComplexAmp::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }

    /// Applies the matrix to a single-qubit amplitude pair.
    pub fn apply(&self, v: [ComplexAmp; 2]) -> [ComplexAmp; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest entrywise deviation of `U^dagger U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.dagger().mul(self);
        let mut worst = 0.0_f64;
        for (i, row) in p.0.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((z - target).norm());
            }
        }
        worst
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Dense state vector of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<ComplexAmp>,
}

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(KlmError::Size(format!(
            "qubit count {n} outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

impl StateVector {
    /// Tensor product of the listed single-qubit states, qubit 1 first.
    pub fn product_state(params: &[QubitParams]) -> Result<Self> {
        check_qubit_count(params.len())?;
        let mut amps = vec![ComplexAmp::new(1.0, 0.0)];
        for q in params {
            let [a0, a1] = q.amplitudes();
            amps = amps.iter().flat_map(|&x| [x * a0, x * a1]).collect();
        }
        Ok(Self {
            n: params.len(),
            amps,
        })
    }

    /// Computational basis state `|index>` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubit_count(n)?;
        if index >= 1 << n {
            return Err(KlmError::Index(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![ComplexAmp::new(0.0, 0.0); 1 << n];
        amps[index] = ComplexAmp::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Wraps an explicit amplitude array, which must have length `2^n` and unit norm
    /// within `1e-9`. The stored vector is renormalized exactly.
    pub fn from_amplitudes(amps: Vec<ComplexAmp>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(KlmError::Size(format!(
                "amplitude count {len} is not 2^n with n >= 1"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_qubit_count(n)?;
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(KlmError::Validation("non-finite amplitude".into()));
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(KlmError::Validation(format!(
                "state norm {norm} differs from 1"
            )));
        }
        let amps = amps.into_iter().map(|z| z / norm).collect();
        Ok(Self { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[ComplexAmp] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    fn check_qubit(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(KlmError::Index(format!(
                "qubit {k} out of range 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    fn bit(&self, k: usize) -> usize {
        1 << (self.n - k)
    }

    /// Applies `u` to qubit `k` (1-based) in place.
    pub fn apply_1q_mut(&mut self, k: usize, u: &Unitary2) -> Result<()> {
        self.check_qubit(k)?;
        if u.unitarity_defect() > UNITARY_TOL {
            return Err(KlmError::Validation("gate is not unitary".into()));
        }
        let bit = self.bit(k);
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let [a, b] = u.apply([self.amps[i], self.amps[i | bit]]);
                self.amps[i] = a;
                self.amps[i | bit] = b;
            }
        }
        Ok(())
    }

    /// Returns the state with `u` applied to qubit `k`.
    pub fn apply_1q(&self, k: usize, u: &Unitary2) -> Result<Self> {
        let mut out = self.clone();
        out.apply_1q_mut(k, u)?;
        Ok(out)
    }

    /// Multiplies every amplitude with qubits `i` and `j` both set by `e^{i phase}`,
    /// in place. `phase` must lie in `[0, pi]`.
    pub fn apply_cphase_mut(&mut self, i: usize, j: usize, phase: f64) -> Result<()> {
        self.check_qubit(i)?;
        self.check_qubit(j)?;
        if i == j {
            return Err(KlmError::Index(format!(
                "controlled phase needs two distinct qubits, got {i} twice"
            )));
        }
        if !(0.0..=PI).contains(&phase) {
            return Err(KlmError::Validation(format!(
                "gate phase {phase} outside [0, pi]"
            )));
        }
        let mask = self.bit(i) | self.bit(j);
        let factor = ComplexAmp::from_polar(1.0, phase);
        for (idx, z) in self.amps.iter_mut().enumerate() {
            if idx & mask == mask {
                *z *= factor;
            }
        }
        Ok(())
    }

    /// Returns the state with a controlled phase on qubits `i`, `j`.
    pub fn apply_cphase(&self, i: usize, j: usize, phase: f64) -> Result<Self> {
        let mut out = self.clone();
        out.apply_cphase_mut(i, j, phase)?;
        Ok(out)
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<ComplexAmp> {
        if self.n != other.n {
            return Err(KlmError::Size(format!(
                "qubit count mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product `self (x) other`; the qubits of `other` are appended after ours.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        check_qubit_count(self.n + other.n)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(Self {
            n: self.n + other.n,
            amps,
        })
    }

    /// The same state multiplied by a global phase `e^{i gamma}`.
    pub fn with_global_phase(&self, gamma: f64) -> Self {
        let f = ComplexAmp::from_polar(1.0, gamma);
        Self {
            n: self.n,
            amps: self.amps.iter().map(|z| z * f).collect(),
        }
    }
}

/// `|<a|b>|^2`, clamped into `[0, 1]`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}
