// Copyright 2026 The phonolase authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phonolase.h"

#include <json.hpp>

#include <cstring>
#include <fstream>
#include <string>

#include "core/lindblad.hpp"
#include "core/meanfield.hpp"
#include "core/models.hpp"
#include "core/observables.hpp"
#include "core/quantum_stats.hpp"
#include "core/report.hpp"
#include "core/sensing.hpp"
#include "core/sweep.hpp"
#include "core/types.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

pl_status fail(pl_status code, const char* what) {
    g_last_error = what ? what : "unknown error";
    return code;
}

template <typename Fn>
pl_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const phl::TruncationError& e) {
        return fail(PL_ERR_TRUNCATION, e.what());
    } catch (const phl::NumericsError& e) {
        return fail(PL_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(PL_ERR_INVALID, e.what());
    } catch (const std::exception& e) {
        return fail(PL_ERR_NUMERIC, e.what());
    }
}

phl::ModelParams to_params(const pl_params& p) {
    phl::ModelParams out;
    out.g_h = p.g_h;
    out.g_c = p.g_c;
    out.gamma_h = p.gamma_h;
    out.gamma_c = p.gamma_c;
    out.eta_h = p.eta_h;
    out.eta_c = p.eta_c;
    out.r = p.r;
    out.beta = p.beta;
    return out;
}

phl::ModelSpec to_spec(pl_model_kind kind, int ld_order, int squeezed, int n_max) {
    phl::ModelSpec spec;
    spec.kind = kind == PL_TWO_ION ? phl::ModelKind::TwoIon : phl::ModelKind::SingleIon;
    if (ld_order != 1 && ld_order != 3) throw std::invalid_argument("ld_order must be 1 or 3");
    spec.ld_order = ld_order == 3 ? phl::LdOrder::Third : phl::LdOrder::First;
    spec.squeezed = squeezed != 0;
    spec.n_max = n_max;
    spec.validate();
    return spec;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

struct pl_model {
    phl::ModelSpec spec;
    phl::ModelParams params;
};

struct pl_steady {
    phl::lindblad::SteadyStateReport report;
};

extern "C" {

const char* pl_version(void) { return "1.0.0"; }

const char* pl_last_error(void) { return g_last_error.c_str(); }

pl_status pl_model_create(pl_model_kind kind, int ld_order, int squeezed, pl_params params,
                          int n_max, pl_model** out) {
    if (!out) return fail(PL_ERR_INVALID, "out must not be null");
    *out = nullptr;
    return guarded([&]() {
        auto spec = to_spec(kind, ld_order, squeezed, n_max);
        auto p = to_params(params);
        p.validate();
        *out = new pl_model{spec, p};
        return PL_OK;
    });
}

void pl_model_free(pl_model* model) { delete model; }

pl_status pl_steady_solve(const pl_model* model, int adaptive, int n_cap, pl_steady** out) {
    if (!model || !out) return fail(PL_ERR_INVALID, "null handle");
    *out = nullptr;
    return guarded([&]() {
        phl::lindblad::SteadyStateReport rep;
        if (adaptive) {
            rep = phl::models::solve_adaptive(model->spec, model->params, model->spec.n_max,
                                              n_cap > 0 ? n_cap : 256);
        } else {
            auto m = phl::models::build(model->spec, model->params);
            rep = phl::lindblad::steady_state(phl::lindblad::build_liouvillian(m.H, m.jumps));
        }
        *out = new pl_steady{std::move(rep)};
        return PL_OK;
    });
}

void pl_steady_free(pl_steady* steady) { delete steady; }

double pl_steady_nbar(const pl_steady* s) { return s->report.nbar; }
double pl_steady_g2(const pl_steady* s) { return s->report.g2; }
int pl_steady_truncation_ok(const pl_steady* s) { return s->report.truncation_ok ? 1 : 0; }
double pl_steady_tail_mass(const pl_steady* s) { return s->report.tail_mass; }
double pl_steady_residual(const pl_steady* s) { return s->report.residual; }
int pl_steady_n_max(const pl_steady* s) { return s->report.n_max; }

pl_status pl_steady_distribution(const pl_steady* s, double* buf, size_t len, size_t* written) {
    if (!s || !buf) return fail(PL_ERR_INVALID, "null handle");
    return guarded([&]() {
        Eigen::VectorXd p = phl::lindblad::motional_distribution(s->report.rho);
        size_t n = std::min(len, size_t(p.size()));
        for (size_t i = 0; i < n; ++i) buf[i] = p(long(i));
        if (written) *written = size_t(p.size());
        return PL_OK;
    });
}

pl_status pl_steady_report_json(const pl_model* model, const pl_steady* s, char** out_json) {
    if (!model || !s || !out_json) return fail(PL_ERR_INVALID, "null handle");
    return guarded([&]() {
        *out_json =
            dup_string(phl::report::steady_report_json(model->spec, model->params, s->report));
        return PL_OK;
    });
}

pl_status pl_steady_wigner(const pl_steady* s, double re_min, double re_max, double im_min,
                           double im_max, int resolution, double* values, int* boundary_warning) {
    if (!s || !values) return fail(PL_ERR_INVALID, "null handle");
    return guarded([&]() {
        if (!s->report.truncation_ok)
            throw phl::TruncationError("wigner: steady state failed its truncation check");
        auto motional = phl::obs::reduce_motional(s->report.rho);
        phl::obs::WignerGridSpec spec{re_min, re_max, im_min, im_max, resolution};
        auto grid = phl::obs::wigner(motional, spec);
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j) values[i * resolution + j] = grid.values(i, j);
        if (boundary_warning) *boundary_warning = grid.boundary_warning ? 1 : 0;
        return PL_OK;
    });
}

void pl_string_free(char* str) { delete[] str; }

pl_phase pl_classify(pl_model_kind kind, pl_params params) {
    try {
        auto p = to_params(params);
        phl::Phase ph = kind == PL_TWO_ION ? phl::meanfield::classify_two_ion(p)
                                           : phl::meanfield::classify_single_ion(p);
        switch (ph) {
            case phl::Phase::Dark: return PL_PHASE_DARK;
            case phl::Phase::Lasing: return PL_PHASE_LASING;
            case phl::Phase::Heating: return PL_PHASE_HEATING;
            case phl::Phase::UnstableDark: return PL_PHASE_UNSTABLE_DARK;
            case phl::Phase::Boundary: return PL_PHASE_BOUNDARY;
        }
    } catch (const std::exception& e) {
        fail(PL_ERR_INVALID, e.what());
    }
    return PL_PHASE_BOUNDARY;
}

pl_status pl_iss(pl_model_kind kind, int ld_order, pl_params params, double* value,
                 int* is_physical) {
    if (!value) return fail(PL_ERR_INVALID, "null output");
    return guarded([&]() {
        auto p = to_params(params);
        phl::meanfield::IssResult iss;
        if (kind == PL_TWO_ION) {
            iss = phl::meanfield::iss_two_ion(p);
        } else {
            iss = ld_order == 3 ? phl::meanfield::iss_single_ion_ld3(p)
                                : phl::meanfield::iss_single_ion(p);
        }
        *value = iss.value;
        if (is_physical) *is_physical = iss.physical() ? 1 : 0;
        return PL_OK;
    });
}

pl_status pl_g2_lowest_order(pl_params params, double* out) {
    if (!out) return fail(PL_ERR_INVALID, "null output");
    return guarded([&]() {
        *out = phl::qstats::g2_lowest_order(to_params(params));
        return PL_OK;
    });
}

pl_status pl_g2_overdamped(pl_params params, double* out) {
    if (!out) return fail(PL_ERR_INVALID, "null output");
    return guarded([&]() {
        *out = phl::qstats::g2_overdamped(to_params(params));
        return PL_OK;
    });
}

pl_status pl_g2_two_ion_full(pl_params params, double* out) {
    if (!out) return fail(PL_ERR_INVALID, "null output");
    return guarded([&]() {
        *out = phl::qstats::g2_two_ion_full(to_params(params));
        return PL_OK;
    });
}

pl_status pl_g2_single_equal_gamma(pl_params params, double* out) {
    if (!out) return fail(PL_ERR_INVALID, "null output");
    return guarded([&]() {
        *out = phl::qstats::g2_single_equal_gamma(to_params(params));
        return PL_OK;
    });
}

pl_status pl_meanfield_report_json(pl_model_kind kind, int ld_order, int squeezed,
                                   pl_params params, char** out_json) {
    if (!out_json) return fail(PL_ERR_INVALID, "null output");
    return guarded([&]() {
        auto spec = to_spec(kind, ld_order, squeezed, 16);
        auto p = to_params(params);
        p.validate();
        *out_json = dup_string(phl::report::meanfield_report_json(spec, p));
        return PL_OK;
    });
}

double pl_w_factor(double r, double beta, double phi) {
    return phl::sensing::w_factor(r, beta, phi);
}

double pl_ld_limit_squeeze(double eta) {
    try {
        return phl::sensing::ld_limit_squeeze(eta);
    } catch (const std::exception& e) {
        fail(PL_ERR_INVALID, e.what());
        return -1.0;
    }
}

pl_status pl_fisher_info(pl_params params, double signal_amplitude, double signal_phase, double r,
                         double beta, pl_sensing_report* out) {
    if (!out) return fail(PL_ERR_INVALID, "null output");
    return guarded([&]() {
        phl::sensing::SignalParams sig{signal_amplitude, signal_phase};
        auto rep = phl::sensing::fisher_info(to_params(params), sig, r, beta);
        out->w = rep.w;
        out->fisher = rep.fisher;
        out->enhancement_vs_unsqueezed = rep.enhancement_vs_unsqueezed;
        out->heating_penalty = rep.heating_penalty;
        out->delta_magnitude = rep.delta_magnitude;
        out->delta_phase = rep.delta_phase;
        return PL_OK;
    });
}

} // extern "C"

namespace {

phl::sweep::SweepSpec parse_sweep_spec(const char* spec_json) {
    json j = json::parse(spec_json);
    phl::sweep::SweepSpec spec;
    const auto& m = j.at("model");
    std::string kind = m.value("kind", "two-ion");
    if (kind != "two-ion" && kind != "single-ion")
        throw std::invalid_argument("model.kind must be two-ion or single-ion");
    spec.model.kind = kind == "single-ion" ? phl::ModelKind::SingleIon : phl::ModelKind::TwoIon;
    spec.model.ld_order = m.value("ld_order", 1) == 3 ? phl::LdOrder::Third : phl::LdOrder::First;
    spec.model.squeezed = m.value("squeezed", false);

    if (j.contains("fixed"))
        for (auto& [key, val] : j.at("fixed").items())
            phl::sweep::set_param(spec.fixed, key, val.get<double>());

    auto parse_axis = [&](const json& a) {
        phl::sweep::Axis axis;
        axis.param = a.at("param").get<std::string>();
        axis.min = a.at("min").get<double>();
        axis.max = a.at("max").get<double>();
        axis.count = a.at("count").get<int>();
        axis.log_scale = a.value("log", true);
        return axis;
    };
    spec.axis1 = parse_axis(j.at("axis1"));
    spec.axis2 = parse_axis(j.at("axis2"));

    for (const auto& name : j.at("outputs"))
        spec.outputs.push_back(phl::sweep::output_from_name(name.get<std::string>()));
    spec.n_start = j.value("n_start", 16);
    spec.model.n_max = spec.n_start;
    spec.n_cap = j.value("n_cap", 128);
    return spec;
}

} // namespace

extern "C" {

pl_status pl_sweep_run(const char* spec_json, const char* out_csv_path, int jobs) {
    if (!spec_json || !out_csv_path) return fail(PL_ERR_INVALID, "null argument");
    return guarded([&]() {
        auto spec = parse_sweep_spec(spec_json);
        auto result = phl::sweep::run(spec, jobs);
        std::ofstream f(out_csv_path);
        if (!f) throw std::invalid_argument(std::string("cannot open ") + out_csv_path);
        f << result.to_csv();
        return PL_OK;
    });
}

pl_status pl_sweep_run_to_string(const char* spec_json, int jobs, char** out_csv) {
    if (!spec_json || !out_csv) return fail(PL_ERR_INVALID, "null argument");
    return guarded([&]() {
        auto spec = parse_sweep_spec(spec_json);
        auto result = phl::sweep::run(spec, jobs);
        *out_csv = dup_string(result.to_csv());
        return PL_OK;
    });
}

} // extern "C"
