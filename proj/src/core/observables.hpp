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

#ifndef PHONOLASE_CORE_OBSERVABLES_HPP
#define PHONOLASE_CORE_OBSERVABLES_HPP

#include <Eigen/Dense>
#include <optional>

#include "core/lindblad.hpp"
#include "core/quantum_stats.hpp"
#include "core/types.hpp"

namespace phl::obs {

using lindblad::DensityMatrix;

/// Trace out every spin factor, keeping the (last) motional factor.
DensityMatrix reduce_motional(const DensityMatrix& rho);

/// <a^dag a> of the motional factor.
double mean_n(const DensityMatrix& rho);

/// <a^dag a^dag a a> / <a^dag a>^2; empty when <n> < 1e-12.
std::optional<double> g2_from_rho(const DensityMatrix& rho);

/// Var(n)/<n> of a phonon distribution; empty at <n> = 0.
std::optional<double> fano(const qstats::PhononDistribution& dist);

struct WignerGridSpec {
    double re_min = -5.0, re_max = 5.0;
    double im_min = -5.0, im_max = 5.0;
    int resolution = 61;  ///< points per axis
};

struct WignerGrid {
    WignerGridSpec spec;
    Eigen::MatrixXd values;   ///< values(i_im, j_re)
    double integral = 0.0;    ///< Riemann-sum of W over the window
    bool boundary_warning = false;  ///< set when mass sits on the window edge
};

/// W(alpha) by displaced parity, evaluated per grid point on the truncated
/// space: W = (2/pi) sum_m (-1)^m <m| D(-alpha) rho D(alpha) |m>.
/// rho must be motional-only (trace out spins first).
WignerGrid wigner(const DensityMatrix& rho_motional, const WignerGridSpec& spec);

/// Variances of the real and imaginary marginals of a Wigner grid.
std::pair<double, double> wigner_marginal_variances(const WignerGrid& grid);

} // namespace phl::obs

#endif
