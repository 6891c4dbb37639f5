/* Copyright 2026 The phonolase authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the phonolase shared library.
 *
 * Trapped-ion phonon-laser toolkit: truncated-Liouvillian steady states,
 * mean-field analytics, recurrence-based phonon statistics, squeezed-mode
 * lasing and Fisher-information sensing figures.
 *
 * Conventions:
 *   - every function returning pl_status uses 0 (PL_OK) for success;
 *   - objects created by the _create/_solve calls are released with the
 *     matching _free; handles are opaque;
 *   - pl_last_error() returns a thread-local message for the most recent
 *     failing call on this thread.
 */

#ifndef PHONOLASE_H
#define PHONOLASE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pl_status {
    PL_OK = 0,
    PL_ERR_INVALID = 2,    /* invalid argument or parameter range */
    PL_ERR_TRUNCATION = 3, /* Fock truncation cannot hold the state */
    PL_ERR_NUMERIC = 4     /* factorization/series/convergence failure */
} pl_status;

typedef enum pl_model_kind { PL_TWO_ION = 0, PL_SINGLE_ION = 1 } pl_model_kind;

typedef enum pl_phase {
    PL_PHASE_DARK = 0,
    PL_PHASE_LASING = 1,
    PL_PHASE_HEATING = 2,
    PL_PHASE_UNSTABLE_DARK = 3,
    PL_PHASE_BOUNDARY = 4
} pl_phase;

/* Physical rates and dimensionless knobs of one laser configuration. */
typedef struct pl_params {
    double g_h, g_c;         /* sideband coupling rates */
    double gamma_h, gamma_c; /* engineered decay rates */
    double eta_h, eta_c;     /* Lamb-Dicke parameters */
    double r, beta;          /* squeeze magnitude and phase */
} pl_params;

typedef struct pl_model pl_model;   /* model configuration handle */
typedef struct pl_steady pl_steady; /* solved steady state handle */

const char* pl_version(void);

/* Thread-local message describing the most recent error on this thread. */
const char* pl_last_error(void);

/* ---- model construction and steady-state solves ---- */

/* ld_order is 1 or 3; squeezed is 0/1; n_max >= 4. */
pl_status pl_model_create(pl_model_kind kind, int ld_order, int squeezed, pl_params params,
                          int n_max, pl_model** out);
void pl_model_free(pl_model* model);

/* Solve for the steady state.  When adaptive is nonzero the truncation is
 * doubled (up to n_cap) until the Fock tail passes; otherwise the model's
 * n_max is used as-is.  Truncation failure still produces a result handle
 * (inspect pl_steady_truncation_ok) and returns PL_OK. */
pl_status pl_steady_solve(const pl_model* model, int adaptive, int n_cap, pl_steady** out);
void pl_steady_free(pl_steady* steady);

double pl_steady_nbar(const pl_steady* s);
double pl_steady_g2(const pl_steady* s); /* NaN below nbar ~ 0 */
int pl_steady_truncation_ok(const pl_steady* s);
double pl_steady_tail_mass(const pl_steady* s);
double pl_steady_residual(const pl_steady* s);
int pl_steady_n_max(const pl_steady* s);

/* Copy the motional occupation distribution into buf (up to len entries);
 * *written receives the number of levels available. */
pl_status pl_steady_distribution(const pl_steady* s, double* buf, size_t len, size_t* written);

/* JSON report (schema_version 1) for a solved steady state; free the string
 * with pl_string_free. */
pl_status pl_steady_report_json(const pl_model* model, const pl_steady* s, char** out_json);

/* Wigner function of the motional state on a square grid: values is filled
 * row-major over [im][re] with resolution^2 entries. */
pl_status pl_steady_wigner(const pl_steady* s, double re_min, double re_max, double im_min,
                           double im_max, int resolution, double* values, int* boundary_warning);

void pl_string_free(char* str);

/* ---- closed-form analytics (no solve) ---- */

pl_phase pl_classify(pl_model_kind kind, pl_params params);

/* Mean-field steady-state intensity; *is_physical is 0 for the masked
 * (negative/divergent) cases.  ld_order selects the saturation law for the
 * single-ion model. */
pl_status pl_iss(pl_model_kind kind, int ld_order, pl_params params, double* value,
                 int* is_physical);

pl_status pl_g2_lowest_order(pl_params params, double* out);
pl_status pl_g2_overdamped(pl_params params, double* out);
pl_status pl_g2_two_ion_full(pl_params params, double* out);
pl_status pl_g2_single_equal_gamma(pl_params params, double* out);

/* Meanfield-only JSON report (phase, intensity, analytic g2, annotations). */
pl_status pl_meanfield_report_json(pl_model_kind kind, int ld_order, int squeezed,
                                   pl_params params, char** out_json);

/* ---- sensing ---- */

typedef struct pl_sensing_report {
    double w;
    double fisher;
    double enhancement_vs_unsqueezed;
    double heating_penalty;
    double delta_magnitude;
    double delta_phase;
} pl_sensing_report;

double pl_w_factor(double r, double beta, double phi);
double pl_ld_limit_squeeze(double eta);
pl_status pl_fisher_info(pl_params params, double signal_amplitude, double signal_phase, double r,
                         double beta, pl_sensing_report* out);

/* ---- sweeps ---- */

/* Run a 2-D parameter sweep described by a JSON spec and write the CSV to
 * out_csv_path.  Spec schema:
 * {
 *   "model": {"kind": "two-ion"|"single-ion", "ld_order": 1|3, "squeezed": bool},
 *   "fixed": {"g_h":..., "g_c":..., "gamma_h":..., "gamma_c":...,
 *              "eta_h":..., "eta_c":..., "r":..., "beta":...},
 *   "axis1": {"param": "g_c", "min":..., "max":..., "count":..., "log": bool},
 *   "axis2": {...},
 *   "outputs": ["nbar_sim","nbar_mf","g2_sim","g2_theory","phase","truncation_ok"],
 *   "n_start": 16, "n_cap": 128
 * } */
pl_status pl_sweep_run(const char* spec_json, const char* out_csv_path, int jobs);

/* As pl_sweep_run but returns the CSV in memory (pl_string_free). */
pl_status pl_sweep_run_to_string(const char* spec_json, int jobs, char** out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PHONOLASE_H */
