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

#include "core/sensing.hpp"

#include <cmath>
#include <tuple>

#include "core/meanfield.hpp"

namespace phl::sensing {

std::pair<double, double> delta_eff(const SignalParams& signal, double r, double beta) {
    if (signal.amplitude < 0.0) throw std::invalid_argument("delta_eff: amplitude >= 0");
    const cxd eps = signal.amplitude * std::exp(cxd(0.0, signal.phase));
    const cxd delta = std::cosh(r) * eps - std::exp(cxd(0.0, beta)) * std::sinh(r) * std::conj(eps);
    return {std::abs(delta), std::arg(delta)};
}

double w_factor(double r, double beta, double phi) {
    return std::cosh(2.0 * r) - std::cosh(r) * std::sinh(r) * std::cos(beta - 2.0 * phi);
}

namespace {
struct ExponentConstants {
    double A, B, C;
};
ExponentConstants abc(const ModelParams& p) {
    const double A = 2.0 * p.g_h * p.g_h / p.gamma_h;
    const double B = 16.0 * std::pow(p.g_h, 4) / std::pow(p.gamma_h, 3);
    return {A, B, p.kappa_c()};
}
} // namespace

double quasi_prob_log(double I, double theta, const ModelParams& p, const SignalParams& signal,
                      double r, double beta) {
    if (I < 0.0) throw std::invalid_argument("quasi_prob: I >= 0");
    auto [A, B, C] = abc(p);
    if (!(A > 0.0)) throw std::invalid_argument("quasi_prob: requires A = 2 g_h^2/gamma_h > 0");
    auto [dmag, dphase] = delta_eff(signal, r, beta);
    return -B / (2.0 * A) * std::pow(I, 4) + (A - C) / A * I * I -
           2.0 * dmag / A * I * std::sin(theta - dphase);
}

double quasi_prob(double I, double theta, const ModelParams& p, const SignalParams& signal,
                  double r, double beta) {
    double lg = quasi_prob_log(I, theta, p, signal, r, beta);
    return std::exp(std::min(lg, 700.0));
}

double quasi_prob_normalizer(const ModelParams& p, const SignalParams& signal, double r,
                             double beta) {
    auto [A, B, C] = abc(p);
    // the quartic term guarantees decay; integrate out to where the exponent
    // has dropped ~80 below its ridge
    double I_ridge2 = std::max(0.0, (A - C) / std::max(B, 1e-300));
    double I_max = std::sqrt(I_ridge2) + std::pow(160.0 * A / std::max(B, 1e-300), 0.25) + 1.0;
    const int nI = 600, nT = 256;
    const double dI = I_max / nI, dT = 2.0 * M_PI / nT;
    double acc = 0.0;
    for (int i = 0; i < nI; ++i) {
        const double I = (i + 0.5) * dI;
        for (int t = 0; t < nT; ++t)
            acc += quasi_prob(I, (t + 0.5) * dT, p, signal, r, beta) * I;
    }
    return acc * dI * dT;
}

SensingReport fisher_info(const ModelParams& p, const SignalParams& signal, double r, double beta,
                          std::optional<double> intensity) {
    p.validate();
    double I;
    if (intensity) {
        I = *intensity;
    } else {
        auto iss = meanfield::iss_two_ion(p);
        I = iss.physical() ? iss.value : 0.0;
    }
    auto [A, B, C] = abc(p);
    (void)B;
    (void)C;
    SensingReport rep;
    rep.w = w_factor(r, beta, signal.phase);
    rep.fisher = 2.0 * I * I * rep.w * rep.w / (A * A);
    rep.enhancement_vs_unsqueezed = std::pow(std::cosh(2.0 * r), 2);
    rep.heating_penalty = 0.5 * std::cosh(2.0 * r);
    std::tie(rep.delta_magnitude, rep.delta_phase) = delta_eff(signal, r, beta);
    return rep;
}

double ld_limit_squeeze(double eta) {
    if (eta <= 0.0 || eta >= 1.0) throw std::invalid_argument("ld_limit_squeeze: eta in (0,1)");
    // criterion eta e^r <= eta_ref e^{r_ref}, anchored at (0.05, 2.9)
    return 2.9 + std::log(0.05 / eta);
}

} // namespace phl::sensing
