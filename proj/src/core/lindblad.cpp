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

#include "core/lindblad.hpp"

#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <limits>

namespace phl::lindblad {

namespace {

SparseC sparse_identity(int d) {
    SparseC I(d, d);
    I.setIdentity();
    return I;
}

} // namespace

double DensityMatrix::hermiticity_defect() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_real() const { return entries.trace().real(); }

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<DenseC> es(0.5 * (entries + entries.adjoint()),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
    if (hermiticity_defect() > 1e-10)
        throw NumericsError("DensityMatrix: Hermiticity defect above 1e-10");
    if (std::abs(trace_real() - 1.0) > 1e-10 || std::abs(entries.trace().imag()) > 1e-10)
        throw NumericsError("DensityMatrix: trace deviates from 1 beyond 1e-10");
    if (min_eigenvalue() <= -1e-8)
        throw NumericsError("DensityMatrix: negative eigenvalue below -1e-8");
}

Liouvillian build_liouvillian(const OperatorMatrix& H, const std::vector<OperatorMatrix>& jumps,
                              double herm_tol) {
    const int d = H.dim();
    for (const auto& j : jumps)
        if (!(j.layout == H.layout))
            throw std::invalid_argument("build_liouvillian: jump operator layout mismatch");
    DenseC Hd(H.entries);
    double hdef = (Hd - Hd.adjoint()).cwiseAbs().maxCoeff();
    if (hdef > herm_tol)
        throw std::invalid_argument("build_liouvillian: H not Hermitian within tolerance");

    const SparseC I = sparse_identity(d);
    const cxd mi(0.0, -1.0);

    // column-stacking: vec(A X B) = (B^T kron A) vec(X)
    SparseC L = mi * SparseC(Eigen::kroneckerProduct(I, H.entries)) -
                mi * SparseC(Eigen::kroneckerProduct(SparseC(H.entries.transpose()), I));
    for (const auto& j : jumps) {
        SparseC jd = j.entries.adjoint();
        SparseC jdj = (jd * j.entries).pruned();
        L += SparseC(Eigen::kroneckerProduct(SparseC(j.entries.conjugate()), j.entries));
        L -= 0.5 * SparseC(Eigen::kroneckerProduct(I, jdj));
        L -= 0.5 * SparseC(Eigen::kroneckerProduct(SparseC(jdj.transpose()), I));
    }
    L.makeCompressed();
    return {H.layout, std::move(L)};
}

namespace {

// Union-find over the d^2 vectorized indices.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
};

} // namespace

SteadyStateReport steady_state(const Liouvillian& L, double residual_tol) {
    const int d = L.dim();
    const long n = long(d) * d;

    // connected component of the sparsity graph holding the diagonal entries
    UnionFind uf{int(n)};
    for (int k = 0; k < L.matrix.outerSize(); ++k)
        for (SparseC::InnerIterator it(L.matrix, k); it; ++it)
            if (it.row() != it.col()) uf.merge(int(it.row()), int(it.col()));
    for (int i = 1; i < d; ++i) uf.merge(0, i * d + i);

    const int root = uf.find(0);
    std::vector<int> local(n, -1);
    std::vector<int> members;
    members.reserve(size_t(d) * 8);
    for (long v = 0; v < n; ++v)
        if (uf.find(int(v)) == root) {
            local[v] = int(members.size());
            members.push_back(int(v));
        }
    const int m = int(members.size());

    // assemble the reduced system; the equation for vec index (0,0) is
    // replaced by the trace-normalization row
    const int trace_row = local[0];
    std::vector<Eigen::Triplet<cxd>> trips;
    trips.reserve(size_t(L.matrix.nonZeros()) + size_t(d));
    for (int k = 0; k < L.matrix.outerSize(); ++k)
        for (SparseC::InnerIterator it(L.matrix, k); it; ++it) {
            int r = local[it.row()];
            if (r < 0 || r == trace_row) continue;
            trips.emplace_back(r, local[it.col()], it.value());
        }
    for (int i = 0; i < d; ++i) trips.emplace_back(trace_row, local[long(i) * d + i], cxd(1.0, 0.0));

    SparseC A(m, m);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();

    Eigen::SparseLU<SparseC, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw NumericsError("steady_state: sparse factorization failed");

    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(m);
    b(trace_row) = 1.0;
    Eigen::VectorXcd x = lu.solve(b);
    // one step of iterative refinement
    x += lu.solve(Eigen::VectorXcd(b - A * x));

    DensityMatrix rho{L.layout, DenseC::Zero(d, d)};
    for (int k = 0; k < m; ++k) {
        long v = members[k];
        rho.entries(int(v % d), int(v / d)) = x(k);
    }
    rho.entries = 0.5 * (rho.entries + rho.entries.adjoint()).eval();
    cxd tr = rho.entries.trace();
    if (std::abs(tr) < 1e-300) throw NumericsError("steady_state: zero-trace null vector");
    rho.entries /= tr;

    SteadyStateReport rep;
    rep.residual = apply_residual(L, rho);
    if (!(rep.residual < residual_tol))
        throw NumericsError("steady_state: residual " + std::to_string(rep.residual) +
                            " above tolerance after refinement");

    Eigen::VectorXd p = motional_distribution(rho);
    const int nm = int(p.size());
    double nbar = 0.0, n2 = 0.0;
    for (int i = 0; i < nm; ++i) {
        nbar += i * p(i);
        n2 += double(i) * (i - 1) * p(i);
    }
    rep.nbar = nbar;
    rep.g2 = nbar > 1e-12 ? n2 / (nbar * nbar) : std::numeric_limits<double>::quiet_NaN();
    rep.tail_mass = p(nm - 1) + p(nm - 2);
    rep.truncation_ok = rep.tail_mass < kTailTolerance;
    rep.n_max = nm;
    rep.rho = std::move(rho);
    return rep;
}

DensityMatrix propagate(const DensityMatrix& rho0, const Liouvillian& L, double t_final, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("propagate: dt must be > 0");
    if (t_final < 0.0) throw std::invalid_argument("propagate: t_final must be >= 0");
    const int d = L.dim();
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.entries.data(), long(d) * d);

    long steps = long(std::ceil(t_final / dt - 1e-12));
    double h = steps > 0 ? t_final / double(steps) : 0.0;
    Eigen::VectorXcd k1, k2, k3, k4;
    for (long s = 0; s < steps; ++s) {
        k1 = L.matrix * v;
        k2 = L.matrix * (v + 0.5 * h * k1);
        k3 = L.matrix * (v + 0.5 * h * k2);
        k4 = L.matrix * (v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    DensityMatrix out{L.layout, Eigen::Map<DenseC>(v.data(), d, d)};
    double trace_drift = std::abs(out.entries.trace() - cxd(1.0, 0.0));
    double herm_drift = out.hermiticity_defect();
    if (steps > 0 && (trace_drift > 1e-8 * double(steps) || herm_drift > 1e-6))
        throw NumericsError("propagate: step-size instability (trace/Hermiticity drift)");
    return out;
}

cxd adjoint_rate(const OperatorMatrix& O, const OperatorMatrix& H,
                 const std::vector<OperatorMatrix>& jumps, const DensityMatrix& rho) {
    if (!(O.layout == H.layout) || !(O.layout == rho.layout))
        throw std::invalid_argument("adjoint_rate: layout mismatch");
    for (const auto& j : jumps)
        if (!(j.layout == O.layout)) throw std::invalid_argument("adjoint_rate: layout mismatch");

    SparseC X = cxd(0.0, 1.0) * SparseC(H.entries * O.entries - O.entries * H.entries);
    for (const auto& j : jumps) {
        SparseC jd = j.entries.adjoint();
        SparseC jdj = jd * j.entries;
        X += SparseC(jd * O.entries * j.entries);
        X -= 0.5 * SparseC(jdj * O.entries + O.entries * jdj);
    }

    cxd acc(0.0, 0.0);
    for (int k = 0; k < X.outerSize(); ++k)
        for (SparseC::InnerIterator it(X, k); it; ++it)
            acc += it.value() * rho.entries(it.col(), it.row());
    return acc;
}

double apply_residual(const Liouvillian& L, const DensityMatrix& rho) {
    const int d = L.dim();
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.entries.data(), long(d) * d);
    return (L.matrix * v).cwiseAbs().maxCoeff();
}

Eigen::VectorXd motional_distribution(const DensityMatrix& rho) {
    const int nm = rho.layout.factors.back();
    const int d = rho.dim();
    Eigen::VectorXd p = Eigen::VectorXd::Zero(nm);
    for (int i = 0; i < d; ++i) p(i % nm) += rho.entries(i, i).real();
    return p;
}

} // namespace phl::lindblad
