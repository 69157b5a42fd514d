/*
 * hypersim — state-vector simulator for heralded hyperparallel Toffoli gates
 * on three photonic qubits (polarization + spatial rail) mediated by four
 * cavity-spin systems.
 *
 * C interface of the shared library. Handles are opaque; every fallible call
 * returns an hs_status, and hs_last_error() describes the most recent
 * failure on the calling thread.
 */

#ifndef HYPERSIM_H
#define HYPERSIM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HS_API __declspec(dllexport)
#else
#define HS_API __attribute__((visibility("default")))
#endif

typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_CONFIG = 1,  /* bad scenario file, path, or parameters */
  HS_ERR_NUMERIC = 2, /* numerical invariant violated */
  HS_ERR_ABORT = 3,   /* gate aborted: all amplitude heralded away */
} hs_status;

typedef struct hs_scenario hs_scenario;
typedef struct hs_outcome hs_outcome;

/* Message for the last failing call on this thread ("" when none). */
HS_API const char* hs_last_error(void);

/* ------------------------------------------------------------------ */
/* Scenario handling                                                    */
/* ------------------------------------------------------------------ */

HS_API hs_status hs_scenario_from_file(const char* path, hs_scenario** out);
HS_API hs_status hs_scenario_from_string(const char* text, hs_scenario** out);
HS_API void hs_scenario_free(hs_scenario* scenario);

/* Canonical serialized form; returns the length it would have written.
 * Pass buf = NULL / cap = 0 to query the required size (excluding NUL). */
HS_API size_t hs_scenario_serialize(const hs_scenario* scenario, char* buf,
                                    size_t cap);

/* Repeat-until-success defaults carried by the scenario file. */
HS_API int hs_scenario_rus_rounds(const hs_scenario* scenario);
HS_API long hs_scenario_rus_trials(const hs_scenario* scenario);

/* ------------------------------------------------------------------ */
/* Single gate run                                                      */
/* ------------------------------------------------------------------ */

HS_API hs_status hs_simulate(const hs_scenario* scenario, hs_outcome** out);
HS_API void hs_outcome_free(hs_outcome* outcome);

HS_API const char* hs_outcome_variant(const hs_outcome* outcome);
/* Probability that no detector fired (trace of the unnormalized state). */
HS_API double hs_outcome_success_probability(const hs_outcome* outcome);
/* Fidelity of the corrected conditional state against the ideal gate. */
HS_API double hs_outcome_oracle_fidelity(const hs_outcome* outcome);
/* Minimum pairwise fidelity between measurement branches (1.0 when the
 * feed-forward corrections make all branches agree; meaningful in
 * exhaustive mode only, 1.0 otherwise). */
HS_API double hs_outcome_branch_agreement(const hs_outcome* outcome);
/* Analytic efficiency and per-pass herald probability at the scenario's
 * working point. */
HS_API double hs_outcome_eta_t(const hs_outcome* outcome);
HS_API double hs_outcome_eta_d(const hs_outcome* outcome);

HS_API size_t hs_outcome_spin_count(const hs_outcome* outcome);
HS_API int hs_outcome_spin_id(const hs_outcome* outcome, size_t i);
HS_API int hs_outcome_spin_value(const hs_outcome* outcome, size_t i);

HS_API size_t hs_outcome_correction_count(const hs_outcome* outcome);
HS_API const char* hs_outcome_correction(const hs_outcome* outcome, size_t i);

HS_API size_t hs_outcome_herald_count(const hs_outcome* outcome);
HS_API const char* hs_outcome_herald_id(const hs_outcome* outcome, size_t i);
HS_API double hs_outcome_herald_mass(const hs_outcome* outcome, size_t i);
HS_API double hs_outcome_loss(const hs_outcome* outcome);

/* ------------------------------------------------------------------ */
/* Sweep, regression table, repeat-until-success                        */
/* ------------------------------------------------------------------ */

/* Runs the scenario's sweep grid and writes the CSV
 * (header g_over_kappa,eta_T,eta_D,fidelity,trace) to csv_path. */
HS_API hs_status hs_sweep_to_csv(const hs_scenario* scenario,
                                 const char* csv_path);

/* Built-in regression: eta_T / eta_D at the three reference couplings.
 * Writes a short text report into buf (NUL-terminated, truncated to cap)
 * and returns HS_OK when every value matches the pinned references. */
HS_API hs_status hs_regression_report(char* buf, size_t cap);

/* Monte-Carlo repeat-until-success estimate for the scenario's gate.
 * single_shot receives the simulated one-round success probability. */
HS_API hs_status hs_rus_estimate(const hs_scenario* scenario, int max_rounds,
                                 long trials, double* estimate,
                                 double* single_shot);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HYPERSIM_H */
