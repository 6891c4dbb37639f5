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

#include "core/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "core/meanfield.hpp"
#include "core/models.hpp"
#include "core/quantum_stats.hpp"

namespace phl::sweep {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt9(double v) {
    if (std::isnan(v)) return "NaN";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}
} // namespace

const char* output_name(Output o) {
    switch (o) {
        case Output::NbarSim: return "nbar_sim";
        case Output::NbarMf: return "nbar_mf";
        case Output::G2Sim: return "g2_sim";
        case Output::G2Theory: return "g2_theory";
        case Output::PhaseLabel: return "phase";
        case Output::TruncationOk: return "truncation_ok";
    }
    return "?";
}

Output output_from_name(const std::string& name) {
    for (Output o : {Output::NbarSim, Output::NbarMf, Output::G2Sim, Output::G2Theory,
                     Output::PhaseLabel, Output::TruncationOk})
        if (name == output_name(o)) return o;
    throw std::invalid_argument("unknown sweep output: " + name);
}

void set_param(ModelParams& p, const std::string& name, double value) {
    if (name == "g_h") p.g_h = value;
    else if (name == "g_c") p.g_c = value;
    else if (name == "gamma_h") p.gamma_h = value;
    else if (name == "gamma_c") p.gamma_c = value;
    else if (name == "eta_h") p.eta_h = value;
    else if (name == "eta_c") p.eta_c = value;
    else if (name == "r") p.r = value;
    else if (name == "beta") p.beta = value;
    else throw std::invalid_argument("unknown parameter name: " + name);
}

void SweepSpec::validate() const {
    model.validate();
    if (axis1.param == axis2.param)
        throw std::invalid_argument("sweep: axis parameters must be distinct");
    if (axis1.count < 1 || axis2.count < 1) throw std::invalid_argument("sweep: axis count >= 1");
    ModelParams probe = fixed;  // also validates the names
    set_param(probe, axis1.param, axis1.min);
    set_param(probe, axis2.param, axis2.min);
    if (outputs.empty()) throw std::invalid_argument("sweep: no outputs requested");
}

std::vector<double> axis_values(const Axis& axis) {
    std::vector<double> v(axis.count);
    if (axis.count == 1) {
        v[0] = axis.min;
        return v;
    }
    if (axis.log_scale) {
        if (axis.min <= 0.0 || axis.max <= 0.0)
            throw std::invalid_argument("sweep: log axis needs positive bounds");
        const double l0 = std::log(axis.min), l1 = std::log(axis.max);
        for (int i = 0; i < axis.count; ++i)
            v[i] = std::exp(l0 + (l1 - l0) * i / double(axis.count - 1));
    } else {
        for (int i = 0; i < axis.count; ++i)
            v[i] = axis.min + (axis.max - axis.min) * i / double(axis.count - 1);
    }
    return v;
}

namespace {

Phase classify(const ModelSpec& spec, const ModelParams& p) {
    return spec.kind == ModelKind::TwoIon ? meanfield::classify_two_ion(p)
                                          : meanfield::classify_single_ion(p);
}

double mf_intensity(const ModelSpec& spec, const ModelParams& p, int& status) {
    if (spec.kind == ModelKind::TwoIon && spec.ld_order == LdOrder::Third) {
        // numeric crossing of the third-order rates, below the heating zero
        if (p.kappa_h() <= p.kappa_c()) {
            status = std::max(status, int(kAnalyticUndefined));
            return kNaN;
        }
        double hi = p.eta_h > 0.0 ? 2.0 / (p.eta_h * p.eta_h) * (1.0 - 1e-12) : 1e9;
        try {
            return meanfield::rates_ld3_crossing(p, 1e-12, hi);
        } catch (const NumericsError&) {
            status = std::max(status, int(kAnalyticUndefined));
            return kNaN;
        }
    }
    meanfield::IssResult iss;
    if (spec.kind == ModelKind::TwoIon) iss = meanfield::iss_two_ion(p);
    else if (spec.ld_order == LdOrder::Third) iss = meanfield::iss_single_ion_ld3(p);
    else iss = meanfield::iss_single_ion(p);
    if (!iss.physical()) {
        // negative mean-field intensities are masked, matching the phase-diagram plots
        status = std::max(status, int(kAnalyticUndefined));
        return kNaN;
    }
    return iss.value;
}

double theory_g2(const ModelSpec& spec, const ModelParams& p, int& status) {
    try {
        if (spec.ld_order == LdOrder::Third || spec.squeezed) {
            status = std::max(status, int(kAnalyticUndefined));
            return kNaN;
        }
        if (spec.kind == ModelKind::TwoIon) return qstats::g2_two_ion_full(p);
        if (std::abs(p.gamma_h - p.gamma_c) <= 1e-12 * std::max(p.gamma_h, p.gamma_c))
            return qstats::g2_single_equal_gamma(p);
        auto dist = qstats::pn_single_ion(p, 64);
        if (!dist.normalizable || !dist.truncation_ok) {
            status = std::max(status, int(kAnalyticUndefined));
            return kNaN;
        }
        auto g2 = qstats::g2_from_distribution(dist);
        if (!g2) {
            status = std::max(status, int(kAnalyticUndefined));
            return kNaN;
        }
        return *g2;
    } catch (const std::exception&) {
        status = std::max(status, int(kAnalyticUndefined));
        return kNaN;
    }
}

Row evaluate_cell(const SweepSpec& spec, double a1, double a2) {
    Row row;
    row.a1 = a1;
    row.a2 = a2;
    ModelParams p = spec.fixed;
    set_param(p, spec.axis1.param, a1);
    set_param(p, spec.axis2.param, a2);

    bool need_sim = false;
    for (Output o : spec.outputs)
        if (o == Output::NbarSim || o == Output::G2Sim || o == Output::TruncationOk)
            need_sim = true;

    lindblad::SteadyStateReport rep;
    bool have_sim = false;
    if (need_sim) {
        try {
            rep = models::solve_adaptive(spec.model, p, spec.n_start, spec.n_cap);
            have_sim = true;
            if (!rep.truncation_ok) row.status = std::max(row.status, int(kTruncationFailure));
        } catch (const std::exception&) {
            row.status = std::max(row.status, int(kNumericFailure));
        }
    }

    for (Output o : spec.outputs) {
        double v = kNaN;
        std::string text;
        try {
            switch (o) {
                case Output::NbarSim:
                    if (have_sim && rep.truncation_ok) v = rep.nbar;
                    break;
                case Output::G2Sim:
                    if (have_sim && rep.truncation_ok) v = rep.g2;
                    break;
                case Output::TruncationOk:
                    if (have_sim) v = rep.truncation_ok ? 1.0 : 0.0;
                    break;
                case Output::NbarMf:
                    v = mf_intensity(spec.model, p, row.status);
                    break;
                case Output::G2Theory:
                    v = theory_g2(spec.model, p, row.status);
                    break;
                case Output::PhaseLabel:
                    text = phase_name(classify(spec.model, p));
                    break;
            }
        } catch (const std::exception&) {
            // a grid value outside the physical range must fail its cell,
            // not the whole sweep
            v = kNaN;
            text.clear();
            row.status = std::max(row.status, int(kNumericFailure));
        }
        row.values.push_back(v);
        row.texts.push_back(text.empty() ? fmt9(v) : text);
    }
    return row;
}

} // namespace

SweepResult run(const SweepSpec& spec, int jobs) {
    spec.validate();
    const auto v1 = axis_values(spec.axis1);
    const auto v2 = axis_values(spec.axis2);
    const int total = int(v1.size() * v2.size());

    SweepResult result;
    result.spec = spec;
    result.rows.resize(total);

    jobs = std::max(1, jobs);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
            const int i = idx / int(v2.size());
            const int j = idx % int(v2.size());
            result.rows[idx] = evaluate_cell(spec, v1[i], v2[j]);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return result;
}

std::string SweepResult::to_csv() const {
    std::string out = spec.axis1.param + "," + spec.axis2.param;
    for (Output o : spec.outputs) {
        out += ",";
        out += output_name(o);
    }
    out += ",status\n";
    for (const Row& r : rows) {
        out += fmt9(r.a1) + "," + fmt9(r.a2);
        for (const std::string& t : r.texts) out += "," + t;
        out += "," + std::to_string(r.status) + "\n";
    }
    return out;
}

} // namespace phl::sweep
