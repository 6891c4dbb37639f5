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

#include "core/meanfield.hpp"

#include <algorithm>
#include <cmath>

namespace phl::meanfield {

namespace {
const cxd I1(0.0, 1.0);

MeanFieldState axpy(const MeanFieldState& s, const MeanFieldState& d, double h) {
    MeanFieldState o;
    o.a = s.a + h * d.a;
    o.sp_h = s.sp_h + h * d.sp_h;
    o.sp_c = s.sp_c + h * d.sp_c;
    o.sz_h = s.sz_h + h * d.sz_h;
    o.sz_c = s.sz_c + h * d.sz_c;
    o.s21 = s.s21 + h * d.s21;
    return o;
}
} // namespace

MeanFieldState two_ion_rhs(const MeanFieldState& s, const ModelParams& p) {
    MeanFieldState d;
    const cxd ad = std::conj(s.a);
    const cxd sm_h = std::conj(s.sp_h);
    const cxd sm_c = std::conj(s.sp_c);
    d.a = -I1 * p.g_c * sm_c - I1 * p.g_h * s.sp_h;
    d.sp_h = -0.5 * p.gamma_h * s.sp_h - I1 * p.g_h * s.a * s.sz_h;
    d.sp_c = -0.5 * p.gamma_c * s.sp_c - I1 * p.g_c * ad * s.sz_c;
    d.sz_h = (2.0 * I1 * p.g_h * (s.a * sm_h - ad * s.sp_h)).real() - p.gamma_h * (s.sz_h + 1.0);
    d.sz_c = (2.0 * I1 * p.g_c * (ad * sm_c - s.a * s.sp_c)).real() - p.gamma_c * (s.sz_c + 1.0);
    d.s21 = 0.0;
    return d;
}

MeanFieldState single_ion_rhs(const MeanFieldState& s, const ModelParams& p) {
    MeanFieldState d;
    const cxd ad = std::conj(s.a);
    const cxd sm_h = std::conj(s.sp_h);
    const cxd sm_c = std::conj(s.sp_c);
    const cxd s12 = std::conj(s.s21);

    d.a = -I1 * p.g_c * sm_c - I1 * p.g_h * s.sp_h;
    d.sp_h = -I1 * p.g_h * s.a * s.sz_h - I1 * p.g_c * ad * s.s21 - 0.5 * p.gamma_h * s.sp_h;
    d.sp_c = -I1 * p.g_c * ad * s.sz_c - I1 * p.g_h * s.a * s12 - 0.5 * p.gamma_c * s.sp_c;

    const double jh = (2.0 * I1 * p.g_h * (s.a * sm_h - ad * s.sp_h)).real();
    const double jc = (2.0 * I1 * p.g_c * (ad * sm_c - s.a * s.sp_c)).real();
    const double mix_h = s.sz_h + 0.5 * (1.0 - s.sz_c);
    const double mix_c = s.sz_c + 0.5 * (1.0 - s.sz_h);
    d.sz_h = jh + 0.5 * jc - (4.0 * p.gamma_h / 3.0) * mix_h - (2.0 * p.gamma_c / 3.0) * mix_c;
    d.sz_c = jc + 0.5 * jh - (4.0 * p.gamma_c / 3.0) * mix_c - (2.0 * p.gamma_h / 3.0) * mix_h;

    d.s21 = I1 * p.g_h * sm_c * s.a - I1 * p.g_c * s.sp_h * s.a - 0.5 * (p.gamma_h + p.gamma_c) * s.s21;
    return d;
}

MeanFieldState integrate(const ModelParams& p, ModelKind kind, MeanFieldState s) {
    p.validate();
    auto rhs = [&](const MeanFieldState& x) {
        return kind == ModelKind::TwoIon ? two_ion_rhs(x, p) : single_ion_rhs(x, p);
    };
    const double dt = 0.01 / std::max({p.gamma_h, p.gamma_c, p.g_h, p.g_c});
    const double horizon = 200.0 / std::min(p.gamma_h, p.gamma_c);
    const long steps = long(std::ceil(horizon / dt));
    for (long i = 0; i < steps; ++i) {
        MeanFieldState k1 = rhs(s);
        MeanFieldState k2 = rhs(axpy(s, k1, 0.5 * dt));
        MeanFieldState k3 = rhs(axpy(s, k2, 0.5 * dt));
        MeanFieldState k4 = rhs(axpy(s, k3, dt));
        MeanFieldState acc = axpy(s, k1, dt / 6.0);
        acc = axpy(acc, k2, dt / 3.0);
        acc = axpy(acc, k3, dt / 3.0);
        s = axpy(acc, k4, dt / 6.0);
    }
    return s;
}

IssResult iss_two_ion(const ModelParams& p) {
    p.validate();
    const double den = 8.0 * p.g_h * p.g_h * p.g_c * p.g_c * (p.gamma_c - p.gamma_h);
    if (std::abs(p.gamma_c - p.gamma_h) <= kBoundaryTol * std::max(p.gamma_c, p.gamma_h) ||
        den == 0.0)
        return {0.0, IssStatus::Divergent};
    const double v = p.gamma_h * p.gamma_h * p.gamma_c * p.gamma_c * (p.kappa_h() - p.kappa_c()) / den;
    return {v, v >= 0.0 ? IssStatus::Ok : IssStatus::Unphysical};
}

IssResult iss_single_ion(const ModelParams& p) {
    p.validate();
    const double s = p.g_c * p.g_c / p.gamma_h - p.g_h * p.g_h / p.gamma_c;
    const double den = 4.0 * s * (p.kappa_h() + p.kappa_c());
    if (std::abs(den) <= kBoundaryTol * std::max(1.0, p.kappa_h() + p.kappa_c()))
        return {0.0, IssStatus::Divergent};
    const double v = (p.gamma_c + p.gamma_h) * (p.kappa_h() - p.kappa_c()) / den;
    return {v, v >= 0.0 ? IssStatus::Ok : IssStatus::Unphysical};
}

IssResult iss_single_ion_ld3(const ModelParams& p) {
    p.validate();
    const double s = p.g_c * p.g_c / p.gamma_h - p.g_h * p.g_h / p.gamma_c;
    const double den = 4.0 * s * (p.kappa_h() + p.kappa_c()) +
                       (p.gamma_c + p.gamma_h) *
                           (p.kappa_h() * p.eta_h * p.eta_h - p.kappa_c() * p.eta_c * p.eta_c);
    if (std::abs(den) <= kBoundaryTol * std::max(1.0, p.kappa_h() + p.kappa_c()))
        return {0.0, IssStatus::Divergent};
    const double v = (p.gamma_c + p.gamma_h) * (p.kappa_h() - p.kappa_c()) / den;
    return {v, v >= 0.0 ? IssStatus::Ok : IssStatus::Unphysical};
}

std::pair<double, double> rates_first_order(const ModelParams& p, double I) {
    if (I < 0.0) throw std::invalid_argument("rates_first_order: I >= 0");
    const double rh = 2.0 * p.kappa_h() / (1.0 + 8.0 * p.g_h * p.g_h / (p.gamma_h * p.gamma_h) * I);
    const double rc = 2.0 * p.kappa_c() / (1.0 + 8.0 * p.g_c * p.g_c / (p.gamma_c * p.gamma_c) * I);
    return {rh, rc};
}

std::pair<double, double> rates_ld3(const ModelParams& p, double I) {
    if (I < 0.0) throw std::invalid_argument("rates_ld3: I >= 0");
    auto rate = [I](double g, double gamma, double eta) {
        const double sat = 2.0 - I * eta * eta;
        return (g * g / gamma) * sat / (1.0 + 2.0 * g * g * I / (gamma * gamma) * sat * sat);
    };
    return {rate(p.g_h, p.gamma_h, p.eta_h), rate(p.g_c, p.gamma_c, p.eta_c)};
}

double rates_ld3_crossing(const ModelParams& p, double lo, double hi) {
    auto f = [&](double I) {
        auto [rh, rc] = rates_ld3(p, I);
        return rh - rc;
    };
    // both rates vanish at their saturation zeros, so the interval can hold
    // an even number of crossings; scan for the first sign change and
    // bisect inside it
    const int kScan = 512;
    double a = lo, fa = f(lo), b = hi;
    bool bracketed = false;
    for (int k = 1; k <= kScan; ++k) {
        double x = lo + (hi - lo) * k / double(kScan);
        double fx = f(x);
        if (fa * fx <= 0.0) {
            b = x;
            bracketed = true;
            break;
        }
        a = x;
        fa = fx;
    }
    if (!bracketed) throw NumericsError("rates_ld3_crossing: no sign change in bracket");
    double flo = fa;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        double fm = f(mid);
        if (fm == 0.0 || (b - a) < 1e-13 * std::max(1.0, b)) return mid;
        if (flo * fm <= 0.0) {
            b = mid;
        } else {
            a = mid;
            flo = fm;
        }
    }
    return 0.5 * (a + b);
}

namespace {
bool near(double a, double b) { return std::abs(a - b) <= kBoundaryTol * std::max(std::abs(a), std::abs(b)); }
} // namespace

Phase classify_two_ion(const ModelParams& p) {
    p.validate();
    const double kh = p.kappa_h(), kc = p.kappa_c();
    if (near(kh, kc) || near(p.gamma_h, p.gamma_c)) return Phase::Boundary;
    if (kh > kc) return p.gamma_h < p.gamma_c ? Phase::Lasing : Phase::Heating;
    return p.gamma_h < p.gamma_c ? Phase::Dark : Phase::UnstableDark;
}

Phase classify_single_ion(const ModelParams& p) {
    p.validate();
    const double kh = p.kappa_h(), kc = p.kappa_c();
    const double lhs = p.g_h * p.g_h / p.gamma_c, rhs = p.g_c * p.g_c / p.gamma_h;
    if (near(kh, kc) || near(lhs, rhs)) return Phase::Boundary;
    const bool stable = lhs < rhs;  // negative nonlinear term
    if (kh > kc) return stable ? Phase::Lasing : Phase::Heating;
    return stable ? Phase::Dark : Phase::UnstableDark;
}

} // namespace phl::meanfield
