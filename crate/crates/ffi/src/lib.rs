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

//! C ABI over the planner and simulator.
//!
//! Every fallible function returns a `KLM_*` status code and writes results through
//! out-pointers. On failure a message is kept per thread; read it with
//! [`klm_last_error_message`]. Handles are opaque and must be released with the
//! matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use klm_prep::io::PlanDocument;
use klm_prep::{
    max_ratio, p_cphase, plan, required_ratios, simulate_plan, strategy_threshold, ComplexAmp,
    KlmError, KlmSpec, PrepPlan, Strategy,
};

pub const KLM_OK: i32 = 0;
pub const KLM_ERR_NULL_POINTER: i32 = 1;
pub const KLM_ERR_SIZE: i32 = 2;
pub const KLM_ERR_INDEX: i32 = 3;
pub const KLM_ERR_VALIDATION: i32 = 4;
pub const KLM_ERR_DEGENERATE: i32 = 5;
pub const KLM_ERR_UNBOUNDED_RATIO: i32 = 6;
pub const KLM_ERR_INFEASIBLE: i32 = 7;
pub const KLM_ERR_BUFFER_TOO_SMALL: i32 = 8;
pub const KLM_ERR_PANIC: i32 = 9;

pub const KLM_STRATEGY_OPTIMAL: i32 = 0;
pub const KLM_STRATEGY_FRANSON_PI: i32 = 1;
pub const KLM_STRATEGY_MIN_PHASE: i32 = 2;

/// Opaque target state.
pub struct KlmSpecHandle(KlmSpec);

/// Opaque preparation plan.
pub struct KlmPlanHandle(PrepPlan);

/// One step of a plan.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct KlmStepInfo {
    pub control_qubit: usize,
    pub new_qubit: usize,
    /// `+inf` when the step must move the whole tail.
    pub required_ratio: f64,
    pub gate_phase: f64,
    pub theta_s: f64,
    pub phi_s: f64,
    pub success: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn code_of(e: &KlmError) -> i32 {
    match e {
        KlmError::Size(_) => KLM_ERR_SIZE,
        KlmError::Index(_) => KLM_ERR_INDEX,
        KlmError::Validation(_) => KLM_ERR_VALIDATION,
        KlmError::Degenerate(_) => KLM_ERR_DEGENERATE,
        KlmError::UnboundedRatio(_) => KLM_ERR_UNBOUNDED_RATIO,
        KlmError::Infeasible { .. } => KLM_ERR_INFEASIBLE,
    }
}

struct Fail(i32, String);

impl From<KlmError> for Fail {
    fn from(e: KlmError) -> Self {
        Fail(code_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(KLM_ERR_NULL_POINTER, format!("{what} is null"))
}

/// Runs `f`, records any failure and maps it to a status code.
fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            clear_error();
            KLM_OK
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".to_string());
            KLM_ERR_PANIC
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn spec_ref<'a>(spec: *const KlmSpecHandle) -> Result<&'a KlmSpec, Fail> {
    spec.as_ref().map(|h| &h.0).ok_or_else(|| null("spec"))
}

unsafe fn plan_ref<'a>(plan: *const KlmPlanHandle) -> Result<&'a PrepPlan, Fail> {
    plan.as_ref().map(|h| &h.0).ok_or_else(|| null("plan"))
}

fn strategy_of(code: i32) -> Result<Strategy, Fail> {
    match code {
        KLM_STRATEGY_OPTIMAL => Ok(Strategy::Optimal),
        KLM_STRATEGY_FRANSON_PI => Ok(Strategy::FransonPi),
        KLM_STRATEGY_MIN_PHASE => Ok(Strategy::MinPhase),
        other => Err(Fail(
            KLM_ERR_VALIDATION,
            format!("unknown strategy {other}"),
        )),
    }
}

/// Message for the last failed call on this thread, or null. Owned by the library and
/// valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn klm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a normalized target from `len = n + 1` amplitudes. `im` may be null for a
/// real target.
///
/// # Safety
/// `re` (and `im` when non-null) must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_spec_new(
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut KlmSpecHandle,
) -> i32 {
    guard(|| {
        if re.is_null() {
            return Err(null("re"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let re = std::slice::from_raw_parts(re, len);
        let amps: Vec<ComplexAmp> = if im.is_null() {
            re.iter().map(|&x| ComplexAmp::new(x, 0.0)).collect()
        } else {
            let im = std::slice::from_raw_parts(im, len);
            re.iter()
                .zip(im)
                .map(|(&a, &b)| ComplexAmp::new(a, b))
                .collect()
        };
        let spec = KlmSpec::new(&amps)?;
        out.write(Box::into_raw(Box::new(KlmSpecHandle(spec))));
        Ok(())
    })
}

/// Parses a target from its JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_spec_from_json(
    json: *const c_char,
    out: *mut *mut KlmSpecHandle,
) -> i32 {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = std::ffi::CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Fail(KLM_ERR_VALIDATION, format!("json is not UTF-8: {e}")))?;
        let spec = KlmSpec::from_json(text)?;
        write(out, Box::into_raw(Box::new(KlmSpecHandle(spec))), "out")
    })
}

/// # Safety
/// `spec` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn klm_spec_free(spec: *mut KlmSpecHandle) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_spec_num_qubits(spec: *const KlmSpecHandle, out: *mut usize) -> i32 {
    guard(|| write(out, spec_ref(spec)?.n(), "out"))
}

/// Copies the normalized amplitudes into `re` and `im`, each of capacity `cap >= n + 1`.
///
/// # Safety
/// `spec` must be a live handle; `re` and `im` must hold `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn klm_spec_amplitudes(
    spec: *const KlmSpecHandle,
    re: *mut f64,
    im: *mut f64,
    cap: usize,
) -> i32 {
    guard(|| {
        let alphas = spec_ref(spec)?.alphas();
        if re.is_null() || im.is_null() {
            return Err(null("output buffer"));
        }
        if cap < alphas.len() {
            return Err(Fail(
                KLM_ERR_BUFFER_TOO_SMALL,
                format!("need {} entries, got {cap}", alphas.len()),
            ));
        }
        for (k, a) in alphas.iter().enumerate() {
            re.add(k).write(a.re);
            im.add(k).write(a.im);
        }
        Ok(())
    })
}

/// Writes the `n - 1` split ratios into `out` (capacity `cap`). `+inf` marks a zero
/// amplitude under a nonzero tail.
///
/// # Safety
/// `spec` must be a live handle; `out` must hold `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn klm_spec_required_ratios(
    spec: *const KlmSpecHandle,
    out: *mut f64,
    cap: usize,
) -> i32 {
    guard(|| {
        let ratios = required_ratios(spec_ref(spec)?);
        if ratios.is_empty() {
            return Ok(());
        }
        if out.is_null() {
            return Err(null("out"));
        }
        if cap < ratios.len() {
            return Err(Fail(
                KLM_ERR_BUFFER_TOO_SMALL,
                format!("need {} entries, got {cap}", ratios.len()),
            ));
        }
        ptr::copy_nonoverlapping(ratios.as_ptr(), out, ratios.len());
        Ok(())
    })
}

/// Plans a preparation chain with one of the `KLM_STRATEGY_*` values.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_plan_new(
    spec: *const KlmSpecHandle,
    strategy: i32,
    out: *mut *mut KlmPlanHandle,
) -> i32 {
    guard(|| {
        let spec = spec_ref(spec)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let p = plan(spec, strategy_of(strategy)?)?;
        out.write(Box::into_raw(Box::new(KlmPlanHandle(p))));
        Ok(())
    })
}

/// # Safety
/// `plan` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn klm_plan_free(plan: *mut KlmPlanHandle) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// Product of per-step success probabilities.
///
/// # Safety
/// `plan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_plan_total(plan: *const KlmPlanHandle, out: *mut f64) -> i32 {
    guard(|| write(out, plan_ref(plan)?.report.total, "out"))
}

/// Success of the same chain with every gate at phase pi.
///
/// # Safety
/// `plan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_plan_baseline(plan: *const KlmPlanHandle, out: *mut f64) -> i32 {
    guard(|| write(out, plan_ref(plan)?.report.baseline, "out"))
}

/// # Safety
/// `plan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_plan_num_steps(plan: *const KlmPlanHandle, out: *mut usize) -> i32 {
    guard(|| write(out, plan_ref(plan)?.steps.len(), "out"))
}

/// # Safety
/// `plan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_plan_step(
    plan: *const KlmPlanHandle,
    index: usize,
    out: *mut KlmStepInfo,
) -> i32 {
    guard(|| {
        let p = plan_ref(plan)?;
        let step = p.steps.get(index).ok_or_else(|| {
            Fail(
                KLM_ERR_INDEX,
                format!("step {index} out of range for {} steps", p.steps.len()),
            )
        })?;
        let info = KlmStepInfo {
            control_qubit: step.control_qubit,
            new_qubit: step.new_qubit,
            required_ratio: step.required_ratio,
            gate_phase: step.gate_phase,
            theta_s: step.signal.theta(),
            phi_s: step.signal.phi(),
            success: p.report.per_step[index].p,
        };
        write(out, info, "out")
    })
}

/// Runs the plan on the state-vector simulator and reports fidelity with the target.
///
/// # Safety
/// `plan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_plan_simulate(plan: *const KlmPlanHandle, fidelity: *mut f64) -> i32 {
    guard(|| {
        let sim = simulate_plan(plan_ref(plan)?)?;
        write(fidelity, sim.fidelity, "fidelity")
    })
}

/// Plan as a JSON document. Release the string with [`klm_string_free`].
///
/// # Safety
/// `plan` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_plan_to_json(
    plan: *const KlmPlanHandle,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let json = PlanDocument::from(plan_ref(plan)?).to_json_pretty();
        let c = CString::new(json).expect("json has no nul bytes");
        write(out, c.into_raw(), "out")
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn klm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Success probability of a controlled-phase gate, phase in `[0, pi]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_p_cphase(phase: f64, out: *mut f64) -> i32 {
    guard(|| write(out, p_cphase(phase)?, "out"))
}

/// Largest split ratio reachable at `phase`; `+inf` at pi.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klm_max_ratio(phase: f64, out: *mut f64) -> i32 {
    guard(|| write(out, max_ratio(phase)?, "out"))
}

/// Ratio above which a pi gate beats the smallest feasible phase.
#[no_mangle]
pub extern "C" fn klm_strategy_threshold() -> f64 {
    strategy_threshold()
}
