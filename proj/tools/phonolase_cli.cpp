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

// Command-line front end.  Links against the phonolase C API only.
//
// Subcommands: steady, sweep, wigner, sensing, meanfield.
// Exit codes: 0 ok, 2 usage error, 3 truncation/convergence failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "phonolase.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitTruncation = 3;

struct CommonOpts {
    std::string model = "two-ion";
    double gh = 0.0, gc = 0.0, gamma_h = 1.0, gamma_c = 1.0;
    double eta_h = 0.0, eta_c = 0.0, r = 0.0, beta = 0.0;
    int nmax = 32;
    int ld_order = 1;
    bool squeezed = false;
    std::string out;
    std::string format;
    int jobs = 1;
    std::string config;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--model", o.model, "two-ion|single-ion")
        ->check(CLI::IsMember({"two-ion", "single-ion"}));
    cmd->add_option("--gh", o.gh, "heating coupling g_h");
    cmd->add_option("--gc", o.gc, "cooling coupling g_c");
    cmd->add_option("--gamma-h", o.gamma_h, "heating decay rate");
    cmd->add_option("--gamma-c", o.gamma_c, "cooling decay rate");
    cmd->add_option("--eta-h", o.eta_h, "heating Lamb-Dicke parameter");
    cmd->add_option("--eta-c", o.eta_c, "cooling Lamb-Dicke parameter");
    cmd->add_option("--r", o.r, "squeeze magnitude");
    cmd->add_option("--beta", o.beta, "squeeze phase (rad)");
    cmd->add_option("--nmax", o.nmax, "Fock truncation");
    cmd->add_option("--ld-order", o.ld_order, "Lamb-Dicke order (1|3)")
        ->check(CLI::IsMember({1, 3}));
    cmd->add_flag("--squeezed", o.squeezed, "use the squeezed-mode model");
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--format", o.format, "csv|json where supported");
    cmd->add_option("--jobs", o.jobs, "worker threads for sweeps");
    cmd->add_option("--config", o.config, "JSON config supplying any flag");
}

pl_params to_pl(const CommonOpts& o) {
    pl_params p{};
    p.g_h = o.gh;
    p.g_c = o.gc;
    p.gamma_h = o.gamma_h;
    p.gamma_c = o.gamma_c;
    p.eta_h = o.eta_h;
    p.eta_c = o.eta_c;
    p.r = o.r;
    p.beta = o.beta;
    return p;
}

pl_model_kind kind_of(const CommonOpts& o) {
    return o.model == "single-ion" ? PL_SINGLE_ION : PL_TWO_ION;
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream f(out_path);
    if (!f) {
        std::cerr << "error: cannot open " << out_path << "\n";
        return kExitUsage;
    }
    f << text;
    return kExitOk;
}

std::string fmt9(double v) {
    if (std::isnan(v)) return "NaN";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Config file support: any long flag may be supplied via a JSON object; flags
// given on the command line take precedence.  The config is expanded into
// synthetic arguments in front of the user's so later (real) flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
    json j;
    f >> j;
    std::vector<std::string> expanded;
    if (args.size() >= 1) expanded.push_back(args[0]);  // subcommand name first
    auto given_on_cli = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    for (auto& [key, val] : j.items()) {
        std::string flag = "--" + key;
        if (given_on_cli(flag)) continue;  // command line wins
        if (val.is_boolean()) {
            if (val.get<bool>()) expanded.push_back(flag);
        } else {
            expanded.push_back(flag + "=" +
                               (val.is_string() ? val.get<std::string>() : val.dump()));
        }
    }
    for (size_t i = 1; i < args.size(); ++i) expanded.push_back(args[i]);
    return expanded;
}

int run_steady(const CommonOpts& o, int ncap) {
    pl_model* model = nullptr;
    if (pl_model_create(kind_of(o), o.ld_order, o.squeezed ? 1 : 0, to_pl(o), o.nmax, &model) !=
        PL_OK) {
        std::cerr << "error: " << pl_last_error() << "\n";
        return kExitUsage;
    }
    pl_steady* steady = nullptr;
    pl_status st = pl_steady_solve(model, 1, ncap, &steady);
    if (st != PL_OK) {
        std::cerr << "error: " << pl_last_error() << "\n";
        pl_model_free(model);
        return st == PL_ERR_INVALID ? kExitUsage : kExitTruncation;
    }
    char* report = nullptr;
    if (pl_steady_report_json(model, steady, &report) != PL_OK) {
        std::cerr << "error: " << pl_last_error() << "\n";
        pl_steady_free(steady);
        pl_model_free(model);
        return kExitTruncation;
    }
    int rc = emit(std::string(report) + "\n", o.out);
    bool ok = pl_steady_truncation_ok(steady) != 0;
    if (!ok) {
        std::cerr << "error: Fock truncation failed at n_max=" << pl_steady_n_max(steady)
                  << " (tail mass " << pl_steady_tail_mass(steady)
                  << "); the parameters likely sit in the heating/runaway phase\n";
        rc = kExitTruncation;
    }
    pl_string_free(report);
    pl_steady_free(steady);
    pl_model_free(model);
    return rc;
}

int run_meanfield(const CommonOpts& o) {
    char* report = nullptr;
    if (pl_meanfield_report_json(kind_of(o), o.ld_order, o.squeezed ? 1 : 0, to_pl(o), &report) !=
        PL_OK) {
        std::cerr << "error: " << pl_last_error() << "\n";
        return kExitUsage;
    }
    int rc = emit(std::string(report) + "\n", o.out);
    pl_string_free(report);
    return rc;
}

struct AxisOpt {
    std::string param;
    double min = 0.0, max = 1.0;
    int count = 2;
    bool log_scale = true;
};

AxisOpt parse_axis(const std::string& text) {
    // param:min:max:count[:lin|log]
    AxisOpt a;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 4 || parts.size() > 5)
        throw CLI::ValidationError("--axis", "expected param:min:max:count[:lin|log]");
    a.param = parts[0];
    a.min = std::stod(parts[1]);
    a.max = std::stod(parts[2]);
    a.count = std::stoi(parts[3]);
    if (parts.size() == 5) {
        if (parts[4] == "lin") a.log_scale = false;
        else if (parts[4] == "log") a.log_scale = true;
        else throw CLI::ValidationError("--axis", "scale must be lin or log");
    }
    return a;
}

int run_sweep(const CommonOpts& o, const std::string& axis1, const std::string& axis2,
              const std::string& outputs, int nstart, int ncap) {
    AxisOpt a1 = parse_axis(axis1);
    AxisOpt a2 = parse_axis(axis2);
    json spec;
    spec["model"] = {{"kind", o.model}, {"ld_order", o.ld_order}, {"squeezed", o.squeezed}};
    spec["fixed"] = {{"g_h", o.gh},         {"g_c", o.gc},   {"gamma_h", o.gamma_h},
                     {"gamma_c", o.gamma_c}, {"eta_h", o.eta_h}, {"eta_c", o.eta_c},
                     {"r", o.r},            {"beta", o.beta}};
    auto axis_json = [](const AxisOpt& a) {
        return json{{"param", a.param}, {"min", a.min},          {"max", a.max},
                    {"count", a.count}, {"log", a.log_scale}};
    };
    spec["axis1"] = axis_json(a1);
    spec["axis2"] = axis_json(a2);
    json outs = json::array();
    std::string cur;
    for (char c : outputs + ",") {
        if (c == ',') {
            if (!cur.empty()) outs.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    spec["outputs"] = outs;
    spec["n_start"] = nstart;
    spec["n_cap"] = ncap;

    char* csv = nullptr;
    if (pl_sweep_run_to_string(spec.dump().c_str(), o.jobs, &csv) != PL_OK) {
        std::cerr << "error: " << pl_last_error() << "\n";
        return kExitUsage;
    }
    int rc = emit(csv, o.out);
    pl_string_free(csv);
    return rc;
}

int run_wigner(const CommonOpts& o, std::optional<double> re_min, std::optional<double> re_max,
               std::optional<double> im_min, std::optional<double> im_max, int res, int ncap) {
    pl_model* model = nullptr;
    if (pl_model_create(kind_of(o), o.ld_order, o.squeezed ? 1 : 0, to_pl(o), o.nmax, &model) !=
        PL_OK) {
        std::cerr << "error: " << pl_last_error() << "\n";
        return kExitUsage;
    }
    pl_steady* steady = nullptr;
    if (pl_steady_solve(model, 1, ncap, &steady) != PL_OK) {
        std::cerr << "error: " << pl_last_error() << "\n";
        pl_model_free(model);
        return kExitTruncation;
    }
    if (!pl_steady_truncation_ok(steady)) {
        std::cerr << "error: truncation failed (likely heating/runaway phase)\n";
        pl_steady_free(steady);
        pl_model_free(model);
        return kExitTruncation;
    }

    double half = 3.3 * std::sqrt(pl_steady_nbar(steady) + 1.5);
    double r0 = re_min.value_or(-half), r1 = re_max.value_or(half);
    double i0 = im_min.value_or(-half), i1 = im_max.value_or(half);

    std::vector<double> values(size_t(res) * res);
    int warn = 0;
    if (pl_steady_wigner(steady, r0, r1, i0, i1, res, values.data(), &warn) != PL_OK) {
        std::cerr << "error: " << pl_last_error() << "\n";
        pl_steady_free(steady);
        pl_model_free(model);
        return kExitTruncation;
    }
    if (warn)
        std::cerr << "warning: significant Wigner mass at the window boundary; widen the grid\n";

    std::string csv = "re,im,w\n";
    for (int i = 0; i < res; ++i) {
        double im = i0 + (i1 - i0) * i / double(res - 1);
        for (int j = 0; j < res; ++j) {
            double re = r0 + (r1 - r0) * j / double(res - 1);
            csv += fmt9(re) + "," + fmt9(im) + "," + fmt9(values[size_t(i) * res + j]) + "\n";
        }
    }
    int rc = emit(csv, o.out);
    pl_steady_free(steady);
    pl_model_free(model);
    return rc;
}

int run_sensing(const CommonOpts& o, double r_max, int r_count, double phi, double eta,
                double amplitude) {
    bool as_json = o.format == "json";
    json rows = json::array();
    std::string csv = "r,w,fisher,enhancement,heating_penalty,ld_limit_reached\n";
    for (int k = 0; k < r_count; ++k) {
        double r = r_count == 1 ? r_max : r_max * k / double(r_count - 1);
        pl_sensing_report rep{};
        if (pl_fisher_info(to_pl(o), amplitude, phi, r, o.beta, &rep) != PL_OK) {
            std::cerr << "error: " << pl_last_error() << "\n";
            return kExitUsage;
        }
        bool ld_reached = r >= pl_ld_limit_squeeze(eta);
        if (as_json) {
            rows.push_back({{"r", r},
                            {"w", rep.w},
                            {"fisher", rep.fisher},
                            {"enhancement", rep.enhancement_vs_unsqueezed},
                            {"heating_penalty", rep.heating_penalty},
                            {"ld_limit_reached", ld_reached}});
        } else {
            csv += fmt9(r) + "," + fmt9(rep.w) + "," + fmt9(rep.fisher) + "," +
                   fmt9(rep.enhancement_vs_unsqueezed) + "," + fmt9(rep.heating_penalty) + "," +
                   (ld_reached ? "1" : "0") + "\n";
        }
    }
    return emit(as_json ? rows.dump(2) + "\n" : csv, o.out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phonolase: trapped-ion phonon laser simulation and analysis"};
    app.require_subcommand(1);

    CommonOpts steady_o, sweep_o, wigner_o, sensing_o, mf_o;
    int steady_ncap = 256;
    std::string axis1, axis2;
    std::string outputs = "nbar_sim,nbar_mf,g2_sim,phase,truncation_ok";
    int sweep_nstart = 16, sweep_ncap = 128;
    std::optional<double> w_remin, w_remax, w_immin, w_immax;
    int w_res = 61, w_ncap = 128;
    double s_rmax = 2.9, s_phi = 0.0, s_eta = 0.05, s_amp = 1.0;
    int s_rcount = 30;

    auto* steady = app.add_subcommand("steady", "solve one steady state, print a JSON report");
    add_common(steady, steady_o);
    steady->add_option("--ncap", steady_ncap, "adaptive truncation cap");

    auto* sweep = app.add_subcommand("sweep", "2-D parameter sweep to CSV");
    add_common(sweep, sweep_o);
    sweep->add_option("--axis1", axis1, "param:min:max:count[:lin|log]")->required();
    sweep->add_option("--axis2", axis2, "param:min:max:count[:lin|log]")->required();
    sweep->add_option("--outputs", outputs, "comma list of outputs");
    sweep->add_option("--nstart", sweep_nstart, "starting truncation");
    sweep->add_option("--ncap", sweep_ncap, "truncation cap");

    auto* wigner = app.add_subcommand("wigner", "Wigner function of a steady state to CSV");
    add_common(wigner, wigner_o);
    wigner->add_option("--re-min", w_remin);
    wigner->add_option("--re-max", w_remax);
    wigner->add_option("--im-min", w_immin);
    wigner->add_option("--im-max", w_immax);
    wigner->add_option("--res", w_res, "points per axis");
    wigner->add_option("--ncap", w_ncap, "adaptive truncation cap");

    auto* sensing = app.add_subcommand("sensing", "squeezed-sensing figures over r");
    add_common(sensing, sensing_o);
    sensing->add_option("--r-max", s_rmax, "largest squeeze magnitude");
    sensing->add_option("--r-count", s_rcount, "number of rows");
    sensing->add_option("--phi", s_phi, "signal phase");
    sensing->add_option("--eta", s_eta, "Lamb-Dicke parameter for the limit flag");
    sensing->add_option("--amplitude", s_amp, "signal amplitude");

    auto* mf = app.add_subcommand("meanfield", "closed-form intensity and phase, no solve");
    add_common(mf, mf_o);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = expand_config(args);
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(int(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (steady->parsed()) return run_steady(steady_o, steady_ncap);
        if (sweep->parsed())
            return run_sweep(sweep_o, axis1, axis2, outputs, sweep_nstart, sweep_ncap);
        if (wigner->parsed())
            return run_wigner(wigner_o, w_remin, w_remax, w_immin, w_immax, w_res, w_ncap);
        if (sensing->parsed()) return run_sensing(sensing_o, s_rmax, s_rcount, s_phi, s_eta, s_amp);
        if (mf->parsed()) return run_meanfield(mf_o);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
