#ifndef KLM_PREP_H
#define KLM_PREP_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define KLM_OK 0

#define KLM_ERR_NULL_POINTER 1

#define KLM_ERR_SIZE 2

#define KLM_ERR_INDEX 3

#define KLM_ERR_VALIDATION 4

#define KLM_ERR_DEGENERATE 5

#define KLM_ERR_UNBOUNDED_RATIO 6

#define KLM_ERR_INFEASIBLE 7

#define KLM_ERR_BUFFER_TOO_SMALL 8

#define KLM_ERR_PANIC 9

#define KLM_STRATEGY_OPTIMAL 0

#define KLM_STRATEGY_FRANSON_PI 1

#define KLM_STRATEGY_MIN_PHASE 2

// Opaque preparation plan.
typedef struct KlmPlanHandle KlmPlanHandle;

// Opaque target state.
typedef struct KlmSpecHandle KlmSpecHandle;

// One step of a plan.
typedef struct KlmStepInfo {
  size_t control_qubit;
  size_t new_qubit;
  // `+inf` when the step must move the whole tail.
  double required_ratio;
  double gate_phase;
  double theta_s;
  double phi_s;
  double success;
} KlmStepInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Owned by the library and
// valid until the next call on the same thread.
const char *klm_last_error_message(void);

// Builds a normalized target from `len = n + 1` amplitudes. `im` may be null for a
// real target.
//
// # Safety
// `re` (and `im` when non-null) must point to `len` readable doubles; `out` must be writable.
int32_t klm_spec_new(const double *re, const double *im, size_t len, struct KlmSpecHandle **out);

// Parses a target from its JSON document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
int32_t klm_spec_from_json(const char *json, struct KlmSpecHandle **out);

// # Safety
// `spec` must come from this library and not be freed twice. Null is ignored.
void klm_spec_free(struct KlmSpecHandle *spec);

// # Safety
// `spec` must be a live handle; `out` must be writable.
int32_t klm_spec_num_qubits(const struct KlmSpecHandle *spec, size_t *out);

// Copies the normalized amplitudes into `re` and `im`, each of capacity `cap >= n + 1`.
//
// # Safety
// `spec` must be a live handle; `re` and `im` must hold `cap` writable doubles.
int32_t klm_spec_amplitudes(const struct KlmSpecHandle *spec, double *re, double *im, size_t cap);

// Writes the `n - 1` split ratios into `out` (capacity `cap`). `+inf` marks a zero
// amplitude under a nonzero tail.
//
// # Safety
// `spec` must be a live handle; `out` must hold `cap` writable doubles.
int32_t klm_spec_required_ratios(const struct KlmSpecHandle *spec, double *out, size_t cap);

// Plans a preparation chain with one of the `KLM_STRATEGY_*` values.
//
// # Safety
// `spec` must be a live handle; `out` must be writable.
int32_t klm_plan_new(const struct KlmSpecHandle *spec,
                     int32_t strategy,
                     struct KlmPlanHandle **out);

// # Safety
// `plan` must come from this library and not be freed twice. Null is ignored.
void klm_plan_free(struct KlmPlanHandle *plan);

// Product of per-step success probabilities.
//
// # Safety
// `plan` must be a live handle; `out` must be writable.
int32_t klm_plan_total(const struct KlmPlanHandle *plan, double *out);

// Success of the same chain with every gate at phase pi.
//
// # Safety
// `plan` must be a live handle; `out` must be writable.
int32_t klm_plan_baseline(const struct KlmPlanHandle *plan, double *out);

// # Safety
// `plan` must be a live handle; `out` must be writable.
int32_t klm_plan_num_steps(const struct KlmPlanHandle *plan, size_t *out);

// # Safety
// `plan` must be a live handle; `out` must be writable.
int32_t klm_plan_step(const struct KlmPlanHandle *plan, size_t index, struct KlmStepInfo *out);

// Runs the plan on the state-vector simulator and reports fidelity with the target.
//
// # Safety
// `plan` must be a live handle; `out` must be writable.
int32_t klm_plan_simulate(const struct KlmPlanHandle *plan, double *fidelity);

// Plan as a JSON document. Release the string with [`klm_string_free`].
//
// # Safety
// `plan` must be a live handle; `out` must be writable.
int32_t klm_plan_to_json(const struct KlmPlanHandle *plan, char **out);

// # Safety
// `s` must come from this library and not be freed twice. Null is ignored.
void klm_string_free(char *s);

// Success probability of a controlled-phase gate, phase in `[0, pi]`.
//
// # Safety
// `out` must be writable.
int32_t klm_p_cphase(double phase, double *out);

// Largest split ratio reachable at `phase`; `+inf` at pi.
//
// # Safety
// `out` must be writable.
int32_t klm_max_ratio(double phase, double *out);

// Ratio above which a pi gate beats the smallest feasible phase.
double klm_strategy_threshold(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KLM_PREP_H */
