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

//! Preparation of KLM ancilla states with tunable controlled-phase gates.
//!
//! A target `sum_j alpha_j |1>^j |0>^(n-j)` is built by a chain of `n - 1`
//! controlled-phase gates, each splitting the remaining tail amplitude with a
//! freshly added signal qubit. The planner picks every gate phase to maximize the
//! product of linear-optical success probabilities, and every plan can be checked
//! on an exact state-vector simulator.

pub mod error;
pub mod experiments;
pub mod gate;
pub mod io;
pub mod klm;
pub mod planner;
pub mod search;
pub mod state;
pub mod success;

pub use error::{KlmError, Result};
pub use gate::{
    control_ratio, elementary, max_ratio, pi_phase_ratio, signal_basis_rotation, tau_epsilon,
    Elementary, TauEpsilon,
};
pub use klm::{Family, KlmSpec};
pub use planner::{
    brute_force_plan, extend_equal_split, optimal_phase, plan, required_ratios, simulate_plan,
    step_params, strategy_threshold, EqualSplit, PhaseChoice, PrepPlan, PrepStep, Strategy,
};
pub use state::{fidelity, ComplexAmp, QubitParams, StateVector, Unitary2};
pub use success::{franson_baseline, p_cphase, plan_success, SuccessReport};
