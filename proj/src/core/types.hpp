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

#ifndef PHONOLASE_CORE_TYPES_HPP
#define PHONOLASE_CORE_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace phl {

using cxd = std::complex<double>;

/// Physical rates and dimensionless knobs of one laser configuration.
/// Subscript h labels the heating (phonon-adding) channel, c the cooling one.
struct ModelParams {
    double g_h = 0.0;      ///< heating sideband coupling rate
    double g_c = 0.0;      ///< cooling sideband coupling rate
    double gamma_h = 1.0;  ///< heating-channel decay rate
    double gamma_c = 1.0;  ///< cooling-channel decay rate
    double eta_h = 0.0;    ///< heating Lamb-Dicke parameter
    double eta_c = 0.0;    ///< cooling Lamb-Dicke parameter
    double r = 0.0;        ///< squeeze magnitude
    double beta = 0.0;     ///< squeeze phase (radians)

    double kappa_h() const { return g_h * g_h / gamma_h; }
    double kappa_c() const { return g_c * g_c / gamma_c; }

    /// Throws std::invalid_argument when a field is outside its physical range.
    void validate() const {
        if (g_h < 0.0 || g_c < 0.0)
            throw std::invalid_argument("ModelParams: couplings must be >= 0");
        if (gamma_h <= 0.0 || gamma_c <= 0.0)
            throw std::invalid_argument("ModelParams: decay rates must be > 0");
        if (eta_h < 0.0 || eta_h >= 1.0 || eta_c < 0.0 || eta_c >= 1.0)
            throw std::invalid_argument("ModelParams: Lamb-Dicke parameters must be in [0,1)");
        if (r < 0.0)
            throw std::invalid_argument("ModelParams: squeeze magnitude must be >= 0");
    }
};

enum class ModelKind { TwoIon, SingleIon };
enum class LdOrder { First, Third };

/// Selects one laser variant and its Fock truncation.
struct ModelSpec {
    ModelKind kind = ModelKind::TwoIon;
    LdOrder ld_order = LdOrder::First;
    bool squeezed = false;
    int n_max = 32;

    void validate() const {
        if (n_max < 4) throw std::invalid_argument("ModelSpec: n_max must be >= 4");
    }
};

/// Mean-field phase labels; Boundary marks parameter sets on a transition
/// manifold where the label is discontinuous.
enum class Phase { Dark, Lasing, Heating, UnstableDark, Boundary };

inline const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Dark: return "Dark";
        case Phase::Lasing: return "Lasing";
        case Phase::Heating: return "Heating";
        case Phase::UnstableDark: return "UnstableDark";
        case Phase::Boundary: return "Boundary";
    }
    return "?";
}

/// Thrown when a truncated computation cannot represent its result
/// (runaway phonon number, non-normalizable distribution, ...).
class TruncationError : public std::runtime_error {
  public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on numerical failures (singular solve, series non-convergence).
class NumericsError : public std::runtime_error {
  public:
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace phl

#endif
