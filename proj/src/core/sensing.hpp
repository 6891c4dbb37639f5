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

#ifndef PHONOLASE_CORE_SENSING_HPP
#define PHONOLASE_CORE_SENSING_HPP

#include <optional>
#include <utility>

#include "core/types.hpp"

namespace phl::sensing {

/// Resonant external drive epsilon = amplitude * e^{i phase}.
struct SignalParams {
    double amplitude = 0.0;
    double phase = 0.0;
};

/// Effective signal in the squeezed frame,
/// delta = cosh(r) eps - e^{i beta} sinh(r) eps^*, in polar form.
std::pair<double, double> delta_eff(const SignalParams& signal, double r, double beta);

/// Squeezing multiplier of the Fisher information,
/// W = cosh(2r) - cosh(r) sinh(r) cos(beta - 2 phi).
double w_factor(double r, double beta, double phi);

/// Log of the unnormalized quasi-probability steady state,
/// -B/(2A) I^4 + (A-C)/A I^2 - 2|delta|/A I sin(theta - gamma),
/// with A = 2 g_h^2/gamma_h, B = 16 g_h^4/gamma_h^3, C = kappa_c.
double quasi_prob_log(double I, double theta, const ModelParams& p, const SignalParams& signal,
                      double r, double beta);

/// exp of quasi_prob_log, clamped against overflow.
double quasi_prob(double I, double theta, const ModelParams& p, const SignalParams& signal,
                  double r, double beta);

/// Numerically integrated normalizer N = int P(I,theta) I dI dtheta.
double quasi_prob_normalizer(const ModelParams& p, const SignalParams& signal, double r,
                             double beta);

struct SensingReport {
    double w = 0.0;
    double fisher = 0.0;           ///< 2 I^2 W^2 / A^2
    double enhancement_vs_unsqueezed = 0.0;  ///< cosh(2r)^2 at the orthogonal optimum
    double heating_penalty = 0.0;  ///< cosh(2r)/2
    double delta_magnitude = 0.0;
    double delta_phase = 0.0;
};

/// Fisher-information figures for the squeezed laser near threshold.
/// The intensity defaults to the unsqueezed mean-field steady state.
SensingReport fisher_info(const ModelParams& p, const SignalParams& signal, double r, double beta,
                          std::optional<double> intensity = std::nullopt);

/// Squeeze magnitude at which the Lamb-Dicke criterion eta e^r <= const is
/// violated; the constant is calibrated so that ld_limit_squeeze(0.05) = 2.9.
double ld_limit_squeeze(double eta);

} // namespace phl::sensing

#endif
