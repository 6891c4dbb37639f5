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

#ifndef PHONOLASE_CORE_MEANFIELD_HPP
#define PHONOLASE_CORE_MEANFIELD_HPP

#include <utility>

#include "core/types.hpp"

namespace phl::meanfield {

/// First-order cumulant variables. s21 is used by the single-ion model only
/// and stays zero for the two-ion equations.
struct MeanFieldState {
    cxd a{0.0, 0.0};     ///< <a>
    cxd sp_h{0.0, 0.0};  ///< <sigma+_h>
    cxd sp_c{0.0, 0.0};  ///< <sigma+_c>
    double sz_h = -1.0;  ///< <sigmaz_h>
    double sz_c = -1.0;  ///< <sigmaz_c>
    cxd s21{0.0, 0.0};   ///< <sigma_21> (single-ion)
};

/// Right-hand side of the two-ion cumulant equations.
MeanFieldState two_ion_rhs(const MeanFieldState& s, const ModelParams& p);

/// Right-hand side of the single-ion cumulant equations, including the
/// sigma_21 cross coherence and the 4*gamma/3, 2*gamma/3 relaxation mixing.
MeanFieldState single_ion_rhs(const MeanFieldState& s, const ModelParams& p);

/// Fixed-step RK4 with dt = 0.01/max(rates), horizon 200/min(gamma).
/// Returns the final state.
MeanFieldState integrate(const ModelParams& p, ModelKind kind, MeanFieldState s0);

enum class IssStatus { Ok, Unphysical, Divergent };

/// Closed-form steady-state intensity with its physicality tag.
struct IssResult {
    double value = 0.0;
    IssStatus status = IssStatus::Ok;
    bool physical() const { return status == IssStatus::Ok; }
};

/// Two-ion lasing intensity
/// gamma_h^2 gamma_c^2 (kappa_h - kappa_c) / (8 g_h^2 g_c^2 (gamma_c - gamma_h)).
IssResult iss_two_ion(const ModelParams& p);

/// Single-ion lasing intensity
/// (gamma_c+gamma_h)(kappa_h-kappa_c) / (4 (g_c^2/gamma_h - g_h^2/gamma_c)(kappa_h+kappa_c)).
IssResult iss_single_ion(const ModelParams& p);

/// Single-ion intensity with third-order Lamb-Dicke saturation.
IssResult iss_single_ion_ld3(const ModelParams& p);

/// First-order effective rates (R_h, R_c) at intensity I:
/// R = 2 kappa / (1 + 8 (g/gamma)^2 I).
std::pair<double, double> rates_first_order(const ModelParams& p, double I);

/// Third-order Lamb-Dicke rates
/// R = kappa (2 - I eta^2) / (1 + 2 (g^2 I/gamma^2)(2 - I eta^2)^2).
std::pair<double, double> rates_ld3(const ModelParams& p, double I);

/// Numerically solve R_h(I) = R_c(I) for the third-order rates by bisection
/// on [lo, hi]; throws NumericsError when no sign change brackets a root.
double rates_ld3_crossing(const ModelParams& p, double lo, double hi);

/// Relative tolerance for boundary detection in the classifiers.
inline constexpr double kBoundaryTol = 1e-9;

Phase classify_two_ion(const ModelParams& p);
Phase classify_single_ion(const ModelParams& p);

} // namespace phl::meanfield

#endif
