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

#ifndef PHONOLASE_CORE_HILBERT_HPP
#define PHONOLASE_CORE_HILBERT_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <vector>

#include "core/types.hpp"

namespace phl::hilbert {

using SparseC = Eigen::SparseMatrix<cxd>;
using DenseC = Eigen::MatrixXcd;

/// Ordered subsystem dimensions of a truncated tensor-product space.
/// By project convention the motional (bosonic) factor is always last.
struct HilbertLayout {
    std::vector<int> factors;

    HilbertLayout() = default;
    explicit HilbertLayout(std::vector<int> f);

    int total_dim() const;
    bool operator==(const HilbertLayout& o) const { return factors == o.factors; }
};

/// A complex matrix on a truncated tensor-product space, with its layout.
/// Stored sparse; most operators here have O(dim) nonzeros.
struct OperatorMatrix {
    HilbertLayout layout;
    SparseC entries;

    OperatorMatrix() = default;
    OperatorMatrix(HilbertLayout l, SparseC m);

    int dim() const { return static_cast<int>(entries.rows()); }
    DenseC dense() const { return DenseC(entries); }
    OperatorMatrix adjoint() const { return {layout, SparseC(entries.adjoint())}; }
};

/// Bosonic destruction operator a on n_max Fock levels: <n-1|a|n> = sqrt(n).
OperatorMatrix fock_destroy(int n_max);

/// Number operator a^dag a (diagonal 0..n_max-1).
OperatorMatrix fock_number(int n_max);

OperatorMatrix identity(int dim);

/// |to><from| on a dim-level system.
OperatorMatrix transition(int dim, int to_level, int from_level);

/// Kronecker product in the given order; layouts concatenate.
OperatorMatrix tensor(const std::vector<OperatorMatrix>& factors);

/// Result of building the squeeze operator on a padded space.
struct SqueezeResult {
    OperatorMatrix op;        ///< n_max x n_max block of the padded exponential
    double unitarity_defect;  ///< max-abs of (S^dag S - 1) on the padded space
    int padded_dim;
};

/// Squeeze operator S(xi) = exp((xi^* a^2 - xi a^dag^2)/2), xi = r e^{i beta},
/// computed by matrix exponential on dimension n_max + pad and projected back.
/// pad < 0 selects the default max(20, ceil(n_max sinh^2 r)).
/// Throws NumericsError when the exponential fails its unitarity check.
SqueezeResult squeeze_matrix(cxd xi, int n_max, int pad = -1);

} // namespace phl::hilbert

#endif
