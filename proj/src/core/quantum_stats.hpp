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

#ifndef PHONOLASE_CORE_QUANTUM_STATS_HPP
#define PHONOLASE_CORE_QUANTUM_STATS_HPP

#include <Eigen/Dense>
#include <optional>

#include "core/types.hpp"

namespace phl::qstats {

/// Steady-state occupation vector p(0..N) with its acceptance diagnostics.
struct PhononDistribution {
    Eigen::VectorXd p;
    bool normalizable = true;   ///< false when the gain/loss ratio proves runaway
    bool truncation_ok = true;  ///< tail below 1e-8 at the final truncation
    double tail = 0.0;
    /// validity-domain metadata: true when the derivation assumptions of the
    /// producing recurrence hold at these parameters (reported, not enforced)
    bool assumptions_ok = true;
};

/// Gain/loss pair of a detailed-balance recurrence at one level.
struct RateSample {
    double gain = 0.0;  ///< multiplies p(n-1)
    double loss = 0.0;  ///< multiplies p(n)
};

/// Two-ion recurrence factors exactly as derived:
///   gain(n) = [4 kappa_h n / (1+8(g_h/gamma_h)^2 n)] [1 - 4 g_c^2 n/(gamma_c^2+8 g_c^2 n)]
///   loss(n) = [4 g_c^2 n / (gamma_c^2+8 g_c^2 n)] [gamma_c - 4 kappa_h (n+1)/(1+8(g_h/gamma_h)^2 (n+1))]
RateSample two_ion_rates(int n, const ModelParams& p);

/// Steady-state distribution of the two-ion recurrence, p(n) = p(0) prod f1/f2,
/// normalized; the truncation is extended geometrically from n_max until the
/// tail falls below 1e-8 or the growing ratio proves non-normalizability.
PhononDistribution pn_two_ion(const ModelParams& p, int n_max);

/// g2(0) = sum n(n-1) p(n) / (sum n p(n))^2; empty when nbar < 1e-12.
std::optional<double> g2_from_distribution(const PhononDistribution& dist);

double nbar_from_distribution(const PhononDistribution& dist);

/// Full two-ion closed form built from Gauss/generalized hypergeometric
/// functions with common argument z = gamma_h/(2 gamma_c - gamma_h).
/// Requires gamma_h < 2 gamma_c; throws on out-of-domain arguments.
double g2_two_ion_full(const ModelParams& p);

/// Lowest order in gamma_h/gamma_c:
/// 2 - 8 (2 g_h^2/gamma_h^2 - g_c^2/gamma_c^2) /
///     ((1 + 4 g_c^2/gamma_c^2)(1 + 16 g_h^2/gamma_h^2)).
double g2_lowest_order(const ModelParams& p);

/// Heavily damped cooling transition:
/// (1 + 1/(1+16 g_h^2/gamma_h^2)) (1 + 4 g_c^2/gamma_c^2).
double g2_overdamped(const ModelParams& p);

/// Single-ion equal-decay distribution
/// p(n) ~ (g_h^2/g_c^2)^n (1 + 8 g_c^2 n/gamma^2 + 8 g_h^2 (n+1)/gamma^2).
/// Requires gamma_h = gamma_c (relative 1e-12) and g_h < g_c.
PhononDistribution pn_single_equal_gamma(const ModelParams& p, int n_max);

/// Exact equal-decay second-order coherence of the single-ion laser.
double g2_single_equal_gamma(const ModelParams& p);

enum class SingleIonLimit {
    CoolingOverdamped,  ///< g_c << gamma: thermal, 2
    HeatingOverdamped,  ///< g_h << gamma: 2 (1+16 g_c^2/gamma^2)/(1+8 g_c^2/gamma^2)^2
    SmallGamma          ///< gamma << g: 8 g_h^2 (g_c^2+2 g_h^2)/(g_c^2+3 g_h^2)^2
};

double g2_single_limits(const ModelParams& p, SingleIonLimit which);

/// Gain/loss recurrence coefficients of the general single-ion case,
/// extracted from per-level steady solves of the nine coupled level and
/// coherence expectations (closure gamma_h ~ gamma_c).  cond_estimate is a
/// cheap reciprocal-pivot estimate of the 9x9 solve conditioning.
struct SingleIonRates {
    double gain = 0.0;
    double loss = 0.0;
    double cond_estimate = 0.0;
};
SingleIonRates single_ion_level_rates(int n, const ModelParams& p);

/// Distribution assembled from single_ion_level_rates.
PhononDistribution pn_single_ion(const ModelParams& p, int n_max);

/// Steady solution of the four heating-spin level/coherence expectations at
/// Fock levels (n, n'), normalized to rho_nn' = 1:
/// components (rho00;nn', rho01;nn'+1, rho10;n+1n', rho11;n+1n'+1).
Eigen::Vector4cd two_ion_heating_levels(int n, int n_prime, const ModelParams& p);

} // namespace phl::qstats

#endif
