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

#include "core/observables.hpp"

#include <cmath>

#include "core/hilbert.hpp"

namespace phl::obs {

using hilbert::DenseC;

DensityMatrix reduce_motional(const DensityMatrix& rho) {
    const int nm = rho.layout.factors.back();
    const int blocks = rho.dim() / nm;
    DenseC out = DenseC::Zero(nm, nm);
    for (int s = 0; s < blocks; ++s) out += rho.entries.block(s * nm, s * nm, nm, nm);
    return {hilbert::HilbertLayout({nm}), std::move(out)};
}

double mean_n(const DensityMatrix& rho) {
    if (rho.layout.factors.empty()) throw std::invalid_argument("mean_n: empty layout");
    Eigen::VectorXd p = lindblad::motional_distribution(rho);
    double nbar = 0.0;
    for (long n = 0; n < p.size(); ++n) nbar += double(n) * p(n);
    return nbar;
}

std::optional<double> g2_from_rho(const DensityMatrix& rho) {
    Eigen::VectorXd p = lindblad::motional_distribution(rho);
    double nbar = 0.0, num = 0.0;
    for (long n = 0; n < p.size(); ++n) {
        nbar += double(n) * p(n);
        num += double(n) * double(n - 1) * p(n);
    }
    if (nbar < 1e-12) return std::nullopt;
    return num / (nbar * nbar);
}

std::optional<double> fano(const qstats::PhononDistribution& dist) {
    double nbar = 0.0, n2 = 0.0;
    for (long n = 0; n < dist.p.size(); ++n) {
        nbar += double(n) * dist.p(n);
        n2 += double(n) * double(n) * dist.p(n);
    }
    if (nbar <= 0.0) return std::nullopt;
    return (n2 - nbar * nbar) / nbar;
}

namespace {

// Displaced-parity kernel, evaluated through the matrix elements
//   <n+k| D(a) Pi D(-a) |n> = (-1)^n e^{ik arg(2a)} f_n^(k),
//   f_n^(k) = sqrt(n!/(n+k)!) (2|a|)^k e^{-2|a|^2} L_n^k(4|a|^2),
// with the normalized Laguerre recurrence keeping every f_n bounded.  This
// stays stable at arbitrary displacement, unlike building D(a) columns on a
// truncated ladder.
double wigner_point(const DenseC& rho, cxd alpha) {
    const int N = int(rho.rows());
    const double B = 4.0 * std::norm(alpha);
    const cxd dir = B > 0.0 ? 2.0 * alpha / std::abs(2.0 * alpha) : cxd(1.0, 0.0);

    double acc = 0.0;
    cxd phase(1.0, 0.0);
    for (int k = 0; k < N; ++k) {
        if (k > 0) phase *= dir;
        // f_0 = e^{-B/2} B^{k/2} / sqrt(k!)
        double f_prev = 0.0;
        double f = k == 0 ? std::exp(-0.5 * B)
                          : (B > 0.0 ? std::exp(-0.5 * B + 0.5 * k * std::log(B) -
                                                0.5 * std::lgamma(k + 1.0))
                                     : 0.0);
        cxd s(0.0, 0.0);
        double sign = 1.0;
        for (int n = 0; n + k < N; ++n) {
            s += sign * f * rho(n, n + k);
            sign = -sign;
            double f_next = ((2.0 * n + k + 1.0 - B) * f -
                             std::sqrt(double(n) * (n + k)) * f_prev) /
                            std::sqrt(double(n + 1) * (n + 1 + k));
            f_prev = f;
            f = f_next;
        }
        acc += k == 0 ? s.real() : 2.0 * (phase * s).real();
    }
    return (2.0 / M_PI) * acc;
}

} // namespace

WignerGrid wigner(const DensityMatrix& rho_motional, const WignerGridSpec& spec) {
    if (rho_motional.layout.factors.size() != 1)
        throw std::invalid_argument("wigner: trace out the spins first");
    if (spec.resolution < 2) throw std::invalid_argument("wigner: resolution >= 2");

    DenseC rho = 0.5 * (rho_motional.entries + rho_motional.entries.adjoint());

    WignerGrid out;
    out.spec = spec;
    out.values.resize(spec.resolution, spec.resolution);
    const double dre = (spec.re_max - spec.re_min) / (spec.resolution - 1);
    const double dim_ = (spec.im_max - spec.im_min) / (spec.resolution - 1);

    for (int i = 0; i < spec.resolution; ++i) {
        const double im = spec.im_min + i * dim_;
        for (int j = 0; j < spec.resolution; ++j) {
            const double re = spec.re_min + j * dre;
            out.values(i, j) = wigner_point(rho, cxd(re, im));
        }
    }

    out.integral = out.values.sum() * dre * dim_;
    double edge = 0.0;
    for (int i = 0; i < spec.resolution; ++i) {
        edge = std::max({edge, std::abs(out.values(i, 0)), std::abs(out.values(i, spec.resolution - 1)),
                         std::abs(out.values(0, i)), std::abs(out.values(spec.resolution - 1, i))});
    }
    out.boundary_warning = edge > 1e-4 * out.values.cwiseAbs().maxCoeff() || out.integral < 0.9;
    return out;
}

std::pair<double, double> wigner_marginal_variances(const WignerGrid& grid) {
    const int n = grid.spec.resolution;
    const double dre = (grid.spec.re_max - grid.spec.re_min) / (n - 1);
    const double dim_ = (grid.spec.im_max - grid.spec.im_min) / (n - 1);
    double norm = 0.0, mre = 0.0, mim = 0.0, vre = 0.0, vim = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double w = grid.values(i, j);
            const double re = grid.spec.re_min + j * dre;
            const double im = grid.spec.im_min + i * dim_;
            norm += w;
            mre += w * re;
            mim += w * im;
        }
    mre /= norm;
    mim /= norm;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double w = grid.values(i, j);
            const double re = grid.spec.re_min + j * dre - mre;
            const double im = grid.spec.im_min + i * dim_ - mim;
            vre += w * re * re;
            vim += w * im * im;
        }
    return {vre / norm, vim / norm};
}

} // namespace phl::obs
