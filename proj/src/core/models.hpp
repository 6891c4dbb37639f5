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

#ifndef PHONOLASE_CORE_MODELS_HPP
#define PHONOLASE_CORE_MODELS_HPP

#include <utility>
#include <vector>

#include "core/hilbert.hpp"
#include "core/lindblad.hpp"
#include "core/types.hpp"

namespace phl::models {

using hilbert::OperatorMatrix;

/// Hamiltonian plus jump operators of one laser variant.
struct HamiltonianModel {
    OperatorMatrix H;
    std::vector<OperatorMatrix> jumps;
    /// set when a third-order Lamb-Dicke factor (1 - eta^2 n / 2) changes
    /// sign inside the truncated space (zero-coupling Fock level)
    bool ld3_sign_change = false;
};

/// eta * Omega * exp(-eta^2 / 2): sideband coupling from a Rabi frequency.
double effective_coupling(double eta, double omega);

/// Bogoliubov sideband couplings (g cosh r, g sinh r).
std::pair<double, double> squeezed_mode_couplings(double g, double r);

/// Two-ion laser on layout [2, 2, n_max]:
/// H = g_h (a^dag s+_h + a s-_h) + g_c (a^dag s-_c + a s+_c),
/// jumps {sqrt(gamma_h) s-_h, sqrt(gamma_c) s-_c}.
HamiltonianModel two_ion_model(const ModelParams& p, int n_max);

/// Single-ion laser on layout [3, n_max]:
/// H = g_h (|2><0| a^dag + |0><2| a) + g_c (|1><0| a + |0><1| a^dag),
/// jumps {sqrt(gamma_h) |0><2|, sqrt(gamma_c) |0><1|}.
HamiltonianModel single_ion_model(const ModelParams& p, int n_max);

/// Two-ion model with third-order Lamb-Dicke saturation on both sidebands:
/// the heating term becomes g_h (a^dag (1 - eta_h^2/2 a^dag a) s+_h + h.c.),
/// cooling analogous with eta_c; jumps unchanged.
HamiltonianModel ld3_two_ion_model(const ModelParams& p, int n_max);

HamiltonianModel ld3_single_ion_model(const ModelParams& p, int n_max);

/// First-order model of the requested kind with the motional mode replaced by
/// the squeezed mode A = cosh(r) a + e^{i beta} sinh(r) a^dag; jumps unchanged.
HamiltonianModel squeezed_model(const ModelSpec& spec, const ModelParams& p, int n_max);

/// Dispatch on ModelSpec.
HamiltonianModel build(const ModelSpec& spec, const ModelParams& p);
HamiltonianModel build(const ModelSpec& spec, const ModelParams& p, int n_max);

/// steady_state with the adaptive-truncation policy: double n_max until
/// truncation_ok or the cap is reached.  The returned report keeps the last
/// (largest) truncation either way.
lindblad::SteadyStateReport solve_adaptive(const ModelSpec& spec, const ModelParams& p,
                                           int n_start = 16, int n_cap = 256);

} // namespace phl::models

#endif
