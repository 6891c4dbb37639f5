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

#ifndef PHONOLASE_CORE_LINDBLAD_HPP
#define PHONOLASE_CORE_LINDBLAD_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <vector>

#include "core/hilbert.hpp"
#include "core/types.hpp"

namespace phl::lindblad {

using hilbert::DenseC;
using hilbert::HilbertLayout;
using hilbert::OperatorMatrix;
using hilbert::SparseC;

/// Superoperator acting on column-stacked density matrices:
/// vec index of rho(i,j) is j*d + i.
struct Liouvillian {
    HilbertLayout layout;
    SparseC matrix;  // d^2 x d^2

    int dim() const { return layout.total_dim(); }
};

struct DensityMatrix {
    HilbertLayout layout;
    DenseC entries;

    int dim() const { return layout.total_dim(); }

    double hermiticity_defect() const;
    double trace_real() const;
    double min_eigenvalue() const;

    /// Hermitian within 1e-10, unit trace within 1e-10, min eigenvalue > -1e-8.
    /// Throws NumericsError on violation.
    void validate() const;
};

/// Steady state plus derived observables and truncation diagnostics.
struct SteadyStateReport {
    DensityMatrix rho;
    double nbar = 0.0;
    double g2 = 0.0;          // NaN when nbar ~ 0
    double tail_mass = 0.0;   // population of the top two Fock levels
    bool truncation_ok = false;
    double residual = 0.0;    // max-abs of L(rho) after normalization
    int n_max = 0;            // Fock truncation of the motional factor
};

/// Tail-mass threshold on the top two Fock levels deciding truncation_ok.
inline constexpr double kTailTolerance = 1e-6;

/// Assemble -i[H,rho] + sum_k (L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho})
/// in vectorized form. H must be Hermitian within `herm_tol` (max-abs).
Liouvillian build_liouvillian(const OperatorMatrix& H, const std::vector<OperatorMatrix>& jumps,
                              double herm_tol = 1e-10);

/// Direct steady-state solve: one Liouvillian row is replaced by the trace
/// normalization and the sparse system is solved, followed by one step of
/// iterative refinement.  The solve is restricted to the connected component
/// of the sparsity pattern that carries the diagonal (trace-supporting)
/// entries; for a Liouvillian with a unique null vector the steady state
/// vanishes identically outside that component.
/// Throws NumericsError when the factorization fails or the residual stays
/// above tolerance.  A truncation failure is reported in the result flags,
/// not thrown.
SteadyStateReport steady_state(const Liouvillian& L, double residual_tol = 1e-9);

/// Fixed-step RK4 integration of d(rho)/dt = L(rho).
DensityMatrix propagate(const DensityMatrix& rho0, const Liouvillian& L, double t_final, double dt);

/// Heisenberg-picture expectation rate:
/// i<[H,O]> + sum_k <L_k^dag O L_k - 1/2 (L_k^dag L_k O + O L_k^dag L_k)>.
cxd adjoint_rate(const OperatorMatrix& O, const OperatorMatrix& H,
                 const std::vector<OperatorMatrix>& jumps, const DensityMatrix& rho);

/// max-abs of L applied to vec(rho).
double apply_residual(const Liouvillian& L, const DensityMatrix& rho);

/// Occupation distribution of the motional factor (last in the layout).
Eigen::VectorXd motional_distribution(const DensityMatrix& rho);

} // namespace phl::lindblad

#endif
