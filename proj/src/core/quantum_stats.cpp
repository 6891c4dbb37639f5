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

#include "core/quantum_stats.hpp"

#include <Eigen/LU>

#include <cmath>
#include <functional>
#include <vector>

#include "core/specfun.hpp"

namespace phl::qstats {

namespace {

constexpr double kDistTailTol = 1e-8;
constexpr int kGrowthCap = 1 << 14;
constexpr int kRunawayRun = 50;  // consecutive ratios >= 1 proving non-normalizability

/// Shared recurrence-to-distribution machinery: unnormalized weights are
/// accumulated with on-the-fly rescaling, the truncation grows geometrically.
PhononDistribution build_distribution(const std::function<RateSample(int)>& rates, int n_max,
                                      bool assumptions_ok) {
    PhononDistribution out;
    out.assumptions_ok = assumptions_ok;

    std::vector<double> w{1.0};
    int runaway_run = 0;
    int target = std::max(8, n_max);

    while (true) {
        int n = int(w.size());
        for (; n < target; ++n) {
            RateSample rs = rates(n);
            if (rs.loss <= 0.0) {
                out.normalizable = false;
                break;
            }
            double ratio = rs.gain / rs.loss;
            runaway_run = ratio >= 1.0 ? runaway_run + 1 : 0;
            if (runaway_run >= kRunawayRun) {
                out.normalizable = false;
                break;
            }
            w.push_back(w.back() * ratio);
            // rescale before the running product can overflow (large nbar)
            if (w.back() > 1e200)
                for (double& x : w) x *= 1e-200;
        }
        if (!out.normalizable) break;
        double total = 0.0;
        for (double x : w) total += x;
        double tail = (w[w.size() - 1] + w[w.size() - 2]) / total;
        if (tail < kDistTailTol || target >= kGrowthCap) {
            out.tail = tail;
            out.truncation_ok = tail < kDistTailTol;
            break;
        }
        target = std::min(2 * target, kGrowthCap);
    }

    if (!out.normalizable) {
        out.truncation_ok = false;
        out.p = Eigen::VectorXd::Zero(1);
        return out;
    }
    out.p = Eigen::Map<Eigen::VectorXd>(w.data(), long(w.size()));
    out.p /= out.p.sum();
    return out;
}

} // namespace

RateSample two_ion_rates(int n, const ModelParams& p) {
    if (n < 1) return {0.0, 0.0};
    const double X = p.g_h * p.g_h / (p.gamma_h * p.gamma_h);
    const double kh = p.kappa_h();
    const double gc2 = p.g_c * p.g_c;
    const double dn = double(n);
    const double cool_frac = 4.0 * gc2 * dn / (p.gamma_c * p.gamma_c + 8.0 * gc2 * dn);
    RateSample rs;
    rs.gain = (4.0 * kh * dn / (1.0 + 8.0 * X * dn)) * (1.0 - cool_frac);
    rs.loss = cool_frac * (p.gamma_c - 4.0 * kh * (dn + 1.0) / (1.0 + 8.0 * X * (dn + 1.0)));
    return rs;
}

PhononDistribution pn_two_ion(const ModelParams& p, int n_max) {
    p.validate();
    const bool assume = p.g_h >= 4.0 * p.g_c && p.gamma_c >= 4.0 * p.gamma_h;
    return build_distribution([&](int n) { return two_ion_rates(n, p); }, n_max, assume);
}

std::optional<double> g2_from_distribution(const PhononDistribution& dist) {
    double nbar = 0.0, num = 0.0;
    for (long n = 0; n < dist.p.size(); ++n) {
        nbar += double(n) * dist.p(n);
        num += double(n) * double(n - 1) * dist.p(n);
    }
    if (nbar < 1e-12) return std::nullopt;
    return num / (nbar * nbar);
}

double nbar_from_distribution(const PhononDistribution& dist) {
    double nbar = 0.0;
    for (long n = 0; n < dist.p.size(); ++n) nbar += double(n) * dist.p(n);
    return nbar;
}

double g2_two_ion_full(const ModelParams& p) {
    p.validate();
    if (!(p.gamma_h < 2.0 * p.gamma_c))
        throw std::invalid_argument("g2_two_ion_full: requires gamma_h < 2 gamma_c");
    const double X = p.g_h * p.g_h / (p.gamma_h * p.gamma_h);
    const double Y = p.g_c * p.g_c / (p.gamma_c * p.gamma_c);
    const double rr = p.gamma_h / p.gamma_c;
    const double z = p.gamma_h / (2.0 * p.gamma_c - p.gamma_h);
    const double b = p.gamma_c * p.gamma_c / (4.0 * p.g_c * p.g_c);
    const double low = p.gamma_c * p.gamma_h * p.gamma_h /
                       (8.0 * p.gamma_c * p.g_h * p.g_h - 4.0 * p.gamma_h * p.g_h * p.g_h);

    const double f1 = specfun::hyp2f1(1.0, 1.0 + b, 2.0 + low, z).value;
    const double f2 = specfun::hyp2f1(2.0, 2.0 + b, 3.0 + low, z).value;
    const double f3 = specfun::hyp2f1(3.0, 2.0 + b, 3.0 + low, z).value;
    const double f4 = specfun::hyp_pfq({2.0, 2.0, 2.0 + b}, {1.0, 3.0 + low}, z).value;

    const double gr = p.g_h / p.gamma_h;
    const double num = 2.0 *
                       (Y * (1.0 + 8.0 * X) * (1.0 + 8.0 * (2.0 - rr) * X) * f1 +
                        8.0 * rr * (1.0 + 4.0 * Y) * X * X * f2) *
                       ((1.0 - (X / Y + 8.0 * X)) * f3 - f2);
    const double den = (rr - 1.0) * (1.0 + 4.0 * Y) *
                       std::pow(gr * (1.0 + 8.0 * X) * f2 + 8.0 * gr * gr * gr * f4, 2);
    return num / den;
}

double g2_lowest_order(const ModelParams& p) {
    p.validate();
    const double X = p.g_h * p.g_h / (p.gamma_h * p.gamma_h);
    const double Y = p.g_c * p.g_c / (p.gamma_c * p.gamma_c);
    return 2.0 - 8.0 * (2.0 * X - Y) / ((1.0 + 4.0 * Y) * (1.0 + 16.0 * X));
}

double g2_overdamped(const ModelParams& p) {
    p.validate();
    const double X = p.g_h * p.g_h / (p.gamma_h * p.gamma_h);
    const double Y = p.g_c * p.g_c / (p.gamma_c * p.gamma_c);
    return (1.0 + 1.0 / (1.0 + 16.0 * X)) * (1.0 + 4.0 * Y);
}

namespace {

void require_equal_gamma(const ModelParams& p) {
    if (std::abs(p.gamma_h - p.gamma_c) > 1e-12 * std::max(p.gamma_h, p.gamma_c))
        throw std::invalid_argument("single-ion equal-decay form requires gamma_h = gamma_c");
}

} // namespace

PhononDistribution pn_single_equal_gamma(const ModelParams& p, int n_max) {
    p.validate();
    require_equal_gamma(p);
    if (p.g_h >= p.g_c) {
        PhononDistribution out;
        out.normalizable = false;
        out.truncation_ok = false;
        out.p = Eigen::VectorXd::Zero(1);
        return out;
    }
    const double g2r = p.gamma_h * p.gamma_h;
    const double x = p.g_h * p.g_h / (p.g_c * p.g_c);
    // detailed-balance ratio of the equal-decay recurrence (telescoping form)
    auto rates = [&](int n) {
        RateSample rs;
        double dn = double(n);
        rs.gain = x * (1.0 + 8.0 * p.g_c * p.g_c * dn / g2r + 8.0 * p.g_h * p.g_h * (dn + 1.0) / g2r);
        rs.loss = 1.0 + 8.0 * p.g_c * p.g_c * (dn - 1.0) / g2r + 8.0 * p.g_h * p.g_h * dn / g2r;
        return rs;
    };
    return build_distribution(rates, n_max, true);
}

double g2_single_equal_gamma(const ModelParams& p) {
    p.validate();
    require_equal_gamma(p);
    const double g2 = p.gamma_h * p.gamma_h;
    const double gc2 = p.g_c * p.g_c, gh2 = p.g_h * p.g_h;
    const double d = g2 * (gc2 - gh2);
    const double num = 2.0 * (d + 16.0 * gc2 * gh2) * (d + 16.0 * (gc2 * gc2 + 2.0 * gc2 * gh2));
    const double den = std::pow(d + 8.0 * (gc2 * gc2 + 3.0 * gc2 * gh2), 2);
    return num / den;
}

double g2_single_limits(const ModelParams& p, SingleIonLimit which) {
    p.validate();
    const double g2 = p.gamma_h * p.gamma_h;
    const double yc = p.g_c * p.g_c / g2;
    switch (which) {
        case SingleIonLimit::CoolingOverdamped:
            return 2.0;
        case SingleIonLimit::HeatingOverdamped:
            return 2.0 * (1.0 + 16.0 * yc) / std::pow(1.0 + 8.0 * yc, 2);
        case SingleIonLimit::SmallGamma: {
            const double gh2 = p.g_h * p.g_h, gc2 = p.g_c * p.g_c;
            return 8.0 * gh2 * (gc2 + 2.0 * gh2) / std::pow(gc2 + 3.0 * gh2, 2);
        }
    }
    throw std::invalid_argument("g2_single_limits: bad selector");
}

namespace {

// Steady solution of the nine level/coherence expectations of the single-ion
// model at base Fock levels (n, n'), under the near-equal-decay closure that
// replaces gamma_h rho_11 + gamma_c rho_22 by (gamma_h+gamma_c)/2 (rho_nn' - rho_00).
// Variable order:
//   0 rho00;nn'   1 rho01;nn'+1  2 rho10;n+1n'  3 rho11;n+1n'+1
//   4 rho02;nn'-1 5 rho20;n-1n'  6 rho22;n-1n'-1
//   7 rho12;n+1n'-1              8 rho21;n-1n'+1
struct NineSolve {
    Eigen::Matrix<cxd, 9, 1> v;
    double cond_estimate;
};

NineSolve nine_level_solve(int n, int n_prime, const ModelParams& p) {
    using M9 = Eigen::Matrix<cxd, 9, 9>;
    const cxd i1(0.0, 1.0);
    const double sn1 = std::sqrt(n + 1.0), snp1 = std::sqrt(n_prime + 1.0);
    const double sn = std::sqrt(std::max(0, n) * 1.0), snp = std::sqrt(std::max(0, n_prime) * 1.0);
    const double gh = p.g_h, gc = p.g_c, gamh = p.gamma_h, gamc = p.gamma_c;
    const double gbar = 0.5 * (gamh + gamc);

    M9 A = M9::Zero();  // dV/dt = A V + b
    A(0, 2) += -i1 * gh * sn1;
    A(0, 1) += i1 * gh * snp1;
    A(0, 5) += -i1 * gc * sn;
    A(0, 4) += i1 * gc * snp;
    A(0, 0) += -gbar;

    A(1, 3) += -i1 * gh * sn1;
    A(1, 0) += i1 * gh * snp1;
    A(1, 8) += -i1 * gc * sn;
    A(1, 1) += -0.5 * gamh;

    A(2, 0) += -i1 * gh * sn1;
    A(2, 3) += i1 * gh * snp1;
    A(2, 7) += i1 * gc * snp;
    A(2, 2) += -0.5 * gamh;

    A(3, 1) += -i1 * gh * sn1;
    A(3, 2) += i1 * gh * snp1;
    A(3, 3) += -gamh;

    A(4, 7) += -i1 * gh * sn1;
    A(4, 6) += -i1 * gc * sn;
    A(4, 0) += i1 * gc * snp;
    A(4, 4) += -0.5 * gamc;

    A(5, 8) += i1 * gh * snp1;
    A(5, 0) += -i1 * gc * sn;
    A(5, 6) += i1 * gc * snp;
    A(5, 5) += -0.5 * gamc;

    A(6, 4) += -i1 * gc * sn;
    A(6, 5) += i1 * gc * snp;
    A(6, 6) += -gamc;

    A(7, 4) += -i1 * gh * sn1;
    A(7, 2) += i1 * gc * snp;
    A(7, 7) += -gbar;

    A(8, 5) += i1 * gh * snp1;
    A(8, 1) += -i1 * gc * sn;
    A(8, 8) += -gbar;

    Eigen::Matrix<cxd, 9, 1> b = Eigen::Matrix<cxd, 9, 1>::Zero();
    b(0) = gbar;  // * rho_nn'

    Eigen::FullPivLU<M9> lu(-A);
    const auto& U = lu.matrixLU();
    double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 9; ++k) {
        double d = std::abs(U(k, k));
        pmax = std::max(pmax, d);
        pmin = std::min(pmin, d);
    }
    if (!(pmin > 0.0) || !lu.isInvertible())
        throw NumericsError("single_ion_level_rates: singular 9x9 system, cond~" +
                            std::to_string(pmax / std::max(pmin, 1e-300)));
    return {lu.solve(b), pmax / pmin};
}

} // namespace

SingleIonRates single_ion_level_rates(int n, const ModelParams& p) {
    p.validate();
    if (n < 0) throw std::invalid_argument("single_ion_level_rates: n >= 0");
    SingleIonRates out;
    const cxd i1(0.0, 1.0);
    double cond = 0.0;
    if (n >= 1) {
        NineSolve low = nine_level_solve(n - 1, n - 1, p);
        // feeding of level n from n-1 through the heating sideband
        out.gain = (-i1 * p.g_h * std::sqrt(double(n)) * (low.v(1) - low.v(2))).real();
        cond = low.cond_estimate;
    }
    NineSolve here = nine_level_solve(n, n, p);
    out.loss = (-i1 * p.g_c * std::sqrt(double(n)) * (here.v(4) - here.v(5))).real();
    out.cond_estimate = std::max(cond, here.cond_estimate);
    return out;
}

PhononDistribution pn_single_ion(const ModelParams& p, int n_max) {
    p.validate();
    const double rel = std::abs(p.gamma_h - p.gamma_c) / std::max(p.gamma_h, p.gamma_c);
    auto rates = [&](int n) {
        SingleIonRates rs = single_ion_level_rates(n, p);
        return RateSample{rs.gain, rs.loss};
    };
    return build_distribution(rates, n_max, rel < 0.5);
}

Eigen::Vector4cd two_ion_heating_levels(int n, int n_prime, const ModelParams& p) {
    p.validate();
    if (n < 0 || n_prime < 0) throw std::invalid_argument("two_ion_heating_levels: levels >= 0");
    const cxd i1(0.0, 1.0);
    const double sn = std::sqrt(n + 1.0), snp = std::sqrt(n_prime + 1.0);
    const double g = p.g_h, gam = p.gamma_h;

    Eigen::Matrix4cd M;
    M << gam, -i1 * g * snp, i1 * g * sn, 0.0,
        -i1 * g * snp, 0.5 * gam, 0.0, i1 * g * sn,
        i1 * g * sn, 0.0, 0.5 * gam, -i1 * g * snp,
        0.0, i1 * g * sn, -i1 * g * snp, gam;
    Eigen::Vector4cd A(gam, 0.0, 0.0, 0.0);
    return M.partialPivLu().solve(A);
}

} // namespace phl::qstats
