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

#include "core/hilbert.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace phl::hilbert {

HilbertLayout::HilbertLayout(std::vector<int> f) : factors(std::move(f)) {
    if (factors.empty())
        throw std::invalid_argument("HilbertLayout: needs at least one factor");
    for (int d : factors)
        if (d < 2) throw std::invalid_argument("HilbertLayout: every factor dimension must be >= 2");
}

int HilbertLayout::total_dim() const {
    int d = 1;
    for (int f : factors) d *= f;
    return d;
}

OperatorMatrix::OperatorMatrix(HilbertLayout l, SparseC m) : layout(std::move(l)), entries(std::move(m)) {
    if (entries.rows() != layout.total_dim() || entries.cols() != layout.total_dim())
        throw std::invalid_argument("OperatorMatrix: shape does not match layout");
}

OperatorMatrix fock_destroy(int n_max) {
    if (n_max < 2) throw std::invalid_argument("fock_destroy: n_max must be >= 2");
    SparseC a(n_max, n_max);
    a.reserve(Eigen::VectorXi::Constant(n_max, 1));
    for (int n = 1; n < n_max; ++n) a.insert(n - 1, n) = std::sqrt(double(n));
    a.makeCompressed();
    return {HilbertLayout({n_max}), std::move(a)};
}

OperatorMatrix fock_number(int n_max) {
    if (n_max < 2) throw std::invalid_argument("fock_number: n_max must be >= 2");
    SparseC m(n_max, n_max);
    m.reserve(Eigen::VectorXi::Constant(n_max, 1));
    for (int n = 1; n < n_max; ++n) m.insert(n, n) = double(n);
    m.makeCompressed();
    return {HilbertLayout({n_max}), std::move(m)};
}

OperatorMatrix identity(int dim) {
    SparseC m(dim, dim);
    m.setIdentity();
    return {HilbertLayout({dim}), std::move(m)};
}

OperatorMatrix transition(int dim, int to_level, int from_level) {
    if (to_level < 0 || from_level < 0 || to_level >= dim || from_level >= dim)
        throw std::invalid_argument("transition: level index out of range");
    SparseC m(dim, dim);
    m.insert(to_level, from_level) = 1.0;
    m.makeCompressed();
    return {HilbertLayout({dim}), std::move(m)};
}

OperatorMatrix tensor(const std::vector<OperatorMatrix>& factors) {
    if (factors.empty()) throw std::invalid_argument("tensor: empty factor list");
    SparseC out = factors.front().entries;
    std::vector<int> dims = factors.front().layout.factors;
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = Eigen::kroneckerProduct(out, factors[k].entries).eval();
        dims.insert(dims.end(), factors[k].layout.factors.begin(), factors[k].layout.factors.end());
    }
    return {HilbertLayout(dims), std::move(out)};
}

SqueezeResult squeeze_matrix(cxd xi, int n_max, int pad) {
    if (n_max < 2) throw std::invalid_argument("squeeze_matrix: n_max must be >= 2");
    const double r = std::abs(xi);
    if (pad < 0) pad = std::max(20, int(std::ceil(n_max * std::sinh(r) * std::sinh(r))));
    const int dim = n_max + pad;

    DenseC a = fock_destroy(dim).dense();
    DenseC gen = 0.5 * (std::conj(xi) * (a * a).eval() - xi * (a.adjoint() * a.adjoint()).eval());
    DenseC S = gen.exp();

    // the generator is anti-Hermitian, so the padded exponential must be
    // unitary up to the accuracy of the matrix exponential itself
    double defect = (S.adjoint() * S - DenseC::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (!(defect < 1e-8))
        throw NumericsError("squeeze_matrix: padded exponential failed unitarity check, defect=" +
                            std::to_string(defect));

    SparseC block = S.topLeftCorner(n_max, n_max).sparseView(1.0, 1e-300);
    return {OperatorMatrix(HilbertLayout({n_max}), std::move(block)), defect, dim};
}

} // namespace phl::hilbert
