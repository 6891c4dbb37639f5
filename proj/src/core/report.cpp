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

#include "core/report.hpp"

#include <json.hpp>

#include <cmath>

#include "core/meanfield.hpp"
#include "core/quantum_stats.hpp"

namespace phl::report {

using nlohmann::json;

namespace {

json params_json(const ModelParams& p) {
    return json{{"g_h", p.g_h},         {"g_c", p.g_c},   {"gamma_h", p.gamma_h},
                {"gamma_c", p.gamma_c}, {"eta_h", p.eta_h}, {"eta_c", p.eta_c},
                {"r", p.r},             {"beta", p.beta}};
}

json model_json(const ModelSpec& spec) {
    return json{{"kind", spec.kind == ModelKind::TwoIon ? "two-ion" : "single-ion"},
                {"ld_order", spec.ld_order == LdOrder::Third ? 3 : 1},
                {"squeezed", spec.squeezed}};
}

const char* iss_status_name(meanfield::IssStatus s) {
    switch (s) {
        case meanfield::IssStatus::Ok: return "ok";
        case meanfield::IssStatus::Unphysical: return "unphysical";
        case meanfield::IssStatus::Divergent: return "divergent";
    }
    return "?";
}

json analytics_json(const ModelSpec& spec, const ModelParams& p) {
    json out;
    meanfield::IssResult iss = spec.kind == ModelKind::TwoIon
                                   ? meanfield::iss_two_ion(p)
                                   : (spec.ld_order == LdOrder::Third
                                          ? meanfield::iss_single_ion_ld3(p)
                                          : meanfield::iss_single_ion(p));
    out["iss"] = {{"value", iss.value}, {"status", iss_status_name(iss.status)}};
    Phase ph = spec.kind == ModelKind::TwoIon ? meanfield::classify_two_ion(p)
                                              : meanfield::classify_single_ion(p);
    out["phase"] = phase_name(ph);

    json assumptions = json::array();
    if (spec.kind == ModelKind::TwoIon) {
        double g2t = NAN;
        try {
            g2t = qstats::g2_two_ion_full(p);
        } catch (const std::exception&) {
        }
        if (std::isfinite(g2t)) out["g2_theory"] = g2t;
        if (!(p.g_h >= 4.0 * p.g_c))
            assumptions.push_back("g2 theory assumes g_h >> g_c (g_h >= 4 g_c violated)");
        if (!(p.gamma_c >= 4.0 * p.gamma_h))
            assumptions.push_back("g2 theory assumes gamma_h << gamma_c (gamma_c >= 4 gamma_h violated)");
    } else {
        if (std::abs(p.gamma_h - p.gamma_c) <= 1e-12 * std::max(p.gamma_h, p.gamma_c)) {
            out["g2_theory"] = qstats::g2_single_equal_gamma(p);
        } else {
            if (std::abs(p.gamma_h - p.gamma_c) > 0.5 * std::max(p.gamma_h, p.gamma_c))
                assumptions.push_back("level-rate theory assumes gamma_h ~ gamma_c");
            try {
                auto dist = qstats::pn_single_ion(p, 64);
                auto g2 = qstats::g2_from_distribution(dist);
                if (dist.normalizable && dist.truncation_ok && g2) out["g2_theory"] = *g2;
            } catch (const std::exception&) {
            }
        }
    }
    out["assumption_violations"] = assumptions;
    return out;
}

} // namespace

std::string steady_report_json(const ModelSpec& spec, const ModelParams& p,
                               const lindblad::SteadyStateReport& rep, int indent) {
    json j;
    j["schema_version"] = 1;
    j["model"] = model_json(spec);
    j["params"] = params_json(p);
    j["nbar"] = rep.nbar;
    if (std::isfinite(rep.g2)) j["g2"] = rep.g2;
    else j["g2"] = nullptr;  // undefined below nbar ~ 0
    if (rep.nbar < 1.0)
        j["g2_caveat"] = "nbar < 1: g2 is dominated by vacuum fluctuations";
    j["truncation"] = {{"ok", rep.truncation_ok},
                       {"tail_mass", rep.tail_mass},
                       {"residual", rep.residual},
                       {"n_max", rep.n_max}};
    j["analytics"] = analytics_json(spec, p);
    return j.dump(indent);
}

std::string meanfield_report_json(const ModelSpec& spec, const ModelParams& p, int indent) {
    json j;
    j["schema_version"] = 1;
    j["model"] = model_json(spec);
    j["params"] = params_json(p);
    j["analytics"] = analytics_json(spec, p);
    return j.dump(indent);
}

} // namespace phl::report
