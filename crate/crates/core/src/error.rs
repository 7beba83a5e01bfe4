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

use thiserror::Error;

/// Errors raised by state construction, gate algebra and planning.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KlmError {
    /// Register or amplitude list has an unsupported length.
    #[error("size error: {0}")]
    Size(String),

    /// Qubit or amplitude index out of range, or a repeated qubit.
    #[error("index error: {0}")]
    Index(String),

    /// Argument outside its domain (angle ranges, non-unitary matrix, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Amplitude list with no weight, or a split of a zero amplitude.
    #[error("degenerate spec: {0}")]
    Degenerate(String),

    /// Ratio with a vanishing denominator.
    #[error("unbounded ratio: {0}")]
    UnboundedRatio(String),

    /// Requested split ratio exceeds what the gate phase can reach.
    #[error("infeasible: requested ratio {ratio} exceeds reachable {reachable} at phase {phase}")]
    Infeasible {
        ratio: f64,
        reachable: f64,
        phase: f64,
    },
}

pub type Result<T> = std::result::Result<T, KlmError>;
