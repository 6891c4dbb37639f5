#include <doctest.h>

#include <cmath>

#include "core/sensing.hpp"
#include "helpers.hpp"

using namespace phl;
using namespace phl::sensing;

TEST_SUITE("sensing") {

TEST_CASE("delta_eff phase alignment") {
    SignalParams sig{0.7, 0.3};
    auto [m0, p0] = delta_eff(sig, 0.0, 0.0);
    CHECK(m0 == doctest::Approx(0.7));
    CHECK(p0 == doctest::Approx(0.3));

    // beta = 2 phi: |delta| = |eps| e^{-r}
    auto [ma, pa] = delta_eff(sig, 1.1, 2.0 * sig.phase);
    CHECK(ma == doctest::Approx(0.7 * std::exp(-1.1)).epsilon(1e-12));
    CHECK(pa == doctest::Approx(sig.phase).epsilon(1e-12));

    // beta - 2 phi = pi: |delta| = |eps| e^{+r}
    auto [mb, pb] = delta_eff(sig, 1.1, 2.0 * sig.phase + M_PI);
    CHECK(mb == doctest::Approx(0.7 * std::exp(1.1)).epsilon(1e-12));
    (void)pb;
}

TEST_CASE("w_factor values and envelope") {
    CHECK(w_factor(0.0, 0.4, 0.9) == doctest::Approx(1.0));

    const double r = 1.45;
    // orthogonal squeezing: cos(beta - 2 phi) = 0
    CHECK(w_factor(r, M_PI / 2.0, 0.0) == doctest::Approx(std::cosh(2.9)).epsilon(1e-12));
    CHECK(std::cosh(2.9) == doctest::Approx(9.11458).epsilon(1e-5));
    // aligned squeezing: cosh(2r) - cosh(r) sinh(r)
    CHECK(w_factor(r, 0.0, 0.0) ==
          doctest::Approx(std::cosh(2.9) - std::cosh(r) * std::sinh(r)).epsilon(1e-12));
    CHECK(std::cosh(2.9) - std::cosh(r) * std::sinh(r) == doctest::Approx(4.584804).epsilon(1e-5));

    // envelope cosh(2r) -/+ sinh(2r)/2 over all phases
    testutil::Rng rng(8);
    for (int t = 0; t < 64; ++t) {
        double rr = rng.uniform(0.0, 2.0);
        double w = w_factor(rr, rng.uniform(0.0, 6.28), rng.uniform(0.0, 6.28));
        CHECK(w >= std::cosh(2 * rr) - 0.5 * std::sinh(2 * rr) - 1e-12);
        CHECK(w <= std::cosh(2 * rr) + 0.5 * std::sinh(2 * rr) + 1e-12);
    }
}

TEST_CASE("quasi_prob symmetry and stationary point") {
    ModelParams p{1.0, 0.7, 1.5, 3.0};
    SignalParams none{0.0, 0.0};

    // |eps| = 0: theta independent
    double ref = quasi_prob(1.3, 0.0, p, none, 0.5, 0.0);
    for (double th : {0.7, 2.0, 4.5})
        CHECK(quasi_prob(1.3, th, p, none, 0.5, 0.0) == doctest::Approx(ref).epsilon(1e-13));

    // 2 pi periodicity in theta
    SignalParams sig{0.4, 0.6};
    CHECK(quasi_prob(0.9, 1.1, p, sig, 0.5, 0.2) ==
          doctest::Approx(quasi_prob(0.9, 1.1 + 2.0 * M_PI, p, sig, 0.5, 0.2)).epsilon(1e-12));

    // argmax over theta at fixed I sits at gamma - pi/2
    auto [dm, dph] = delta_eff(sig, 0.5, 0.2);
    (void)dm;
    double best_th = 0.0, best = -1.0;
    for (int k = 0; k < 4000; ++k) {
        double th = -M_PI + 2.0 * M_PI * k / 4000.0;
        double v = quasi_prob(0.9, th, p, sig, 0.5, 0.2);
        if (v > best) {
            best = v;
            best_th = th;
        }
    }
    double expect = std::remainder(dph - M_PI / 2.0, 2.0 * M_PI);
    CHECK(std::remainder(best_th - expect, 2.0 * M_PI) == doctest::Approx(0.0).epsilon(0.01));

    // radial maximum at I^2 = (A - C)/B when A > C and |eps| = 0
    const double A = 2.0 * p.g_h * p.g_h / p.gamma_h;
    const double B = 16.0 * std::pow(p.g_h, 4) / std::pow(p.gamma_h, 3);
    const double C = p.kappa_c();
    REQUIRE(A > C);
    double Istar = std::sqrt((A - C) / B);
    double bestI = 0.0;
    best = -1.0;
    for (int k = 1; k < 6000; ++k) {
        double I = 3.0 * k / 6000.0;
        double v = quasi_prob(I, 0.0, p, none, 0.0, 0.0);
        if (v > best) {
            best = v;
            bestI = I;
        }
    }
    CHECK(bestI == doctest::Approx(Istar).epsilon(0.01));

    // normalizer is finite and positive
    CHECK(quasi_prob_normalizer(p, sig, 0.5, 0.2) > 0.0);
}

TEST_CASE("fisher_info documented figures") {
    ModelParams p{1.0, 1.0, 1.5, 3.0};
    SignalParams sig{0.1, 0.0};

    auto rep = fisher_info(p, sig, 1.45, M_PI / 2.0);
    CHECK(rep.enhancement_vs_unsqueezed == doctest::Approx(83.0755).epsilon(1e-4));
    CHECK(rep.enhancement_vs_unsqueezed > 75.0);
    CHECK(rep.enhancement_vs_unsqueezed < 90.0);
    CHECK(rep.heating_penalty == doctest::Approx(4.55729).epsilon(1e-3));

    auto r0 = fisher_info(p, sig, 0.0, 0.0);
    CHECK(r0.enhancement_vs_unsqueezed == doctest::Approx(1.0));
    CHECK(r0.heating_penalty == doctest::Approx(0.5));

    // F_Q = 2 I^2 W^2 / A^2: quadratic homogeneity in I
    auto r1 = fisher_info(p, sig, 0.8, 0.3, 2.0);
    auto r2 = fisher_info(p, sig, 0.8, 0.3, 4.0);
    CHECK(r2.fisher == doctest::Approx(4.0 * r1.fisher).epsilon(1e-12));
    CHECK(r1.fisher ==
          doctest::Approx(2.0 * 4.0 * std::pow(w_factor(0.8, 0.3, sig.phase), 2) /
                          std::pow(2.0 * p.g_h * p.g_h / p.gamma_h, 2))
              .epsilon(1e-12));
}

TEST_CASE("ld_limit_squeeze calibration") {
    CHECK(ld_limit_squeeze(0.05) == doctest::Approx(2.9).epsilon(1e-12));
    // halving eta raises the limit by ln 2
    CHECK(ld_limit_squeeze(0.025) - ld_limit_squeeze(0.05) == doctest::Approx(std::log(2.0)));
    // monotone decreasing toward the calibrated minimum at eta -> 1
    CHECK(ld_limit_squeeze(0.9) > ld_limit_squeeze(0.99));
    CHECK(ld_limit_squeeze(0.999) == doctest::Approx(2.9 + std::log(0.05 / 0.999)).epsilon(1e-12));
    CHECK_THROWS_AS(ld_limit_squeeze(0.0), std::invalid_argument);
}

} // TEST_SUITE
