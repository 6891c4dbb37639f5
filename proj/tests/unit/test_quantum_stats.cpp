#include <doctest.h>

#include <cmath>

#include "core/lindblad.hpp"
#include "core/models.hpp"
#include "core/quantum_stats.hpp"
#include "helpers.hpp"

using namespace phl;
using namespace phl::qstats;

namespace {

PhononDistribution from_vector(const Eigen::VectorXd& p) {
    PhononDistribution d;
    d.p = p / p.sum();
    return d;
}

Eigen::VectorXd liouvillian_diagonal(const models::HamiltonianModel& m) {
    auto rep = lindblad::steady_state(lindblad::build_liouvillian(m.H, m.jumps));
    REQUIRE(rep.truncation_ok);
    return lindblad::motional_distribution(rep.rho);
}

double tv_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double acc = 0.0;
    for (long i = 0; i < std::max(a.size(), b.size()); ++i) {
        double x = i < a.size() ? a(i) : 0.0;
        double y = i < b.size() ? b(i) : 0.0;
        acc += std::abs(x - y);
    }
    return 0.5 * acc;
}

} // namespace

TEST_SUITE("quantum_stats") {

TEST_CASE("two_ion_rates structure") {
    ModelParams p{4.0, 0.5, 1.5, 12.0};
    auto r0 = two_ion_rates(0, p);
    CHECK(r0.gain == doctest::Approx(0.0));
    CHECK(r0.loss == doctest::Approx(0.0));  // no loss from the vacuum

    // ratio gain/loss equals the printed product factor term-by-term
    const double X = p.g_h * p.g_h / (p.gamma_h * p.gamma_h);
    const double Y = p.g_c * p.g_c / (p.gamma_c * p.gamma_c);
    const double Z = p.g_h * p.g_h / (p.gamma_h * p.gamma_c);
    const double pref = p.kappa_h() / (p.g_c * p.g_c / p.gamma_c);
    for (int k = 1; k <= 24; ++k) {
        auto rs = two_ion_rates(k, p);
        double expect = pref * (1.0 + 4.0 * Y * k) * (1.0 + 8.0 * X * (k + 1)) /
                        ((1.0 + 8.0 * X * k) * (1.0 + 8.0 * X * (k + 1) - 4.0 * Z * (k + 1)));
        CHECK(rs.gain / rs.loss == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("pn_two_ion: normalization, detailed balance and the validity-point checks") {
    ModelParams p{4.0, 0.5, 1.5, 12.0};
    auto dist = pn_two_ion(p, 32);
    CHECK(dist.normalizable);
    CHECK(dist.truncation_ok);
    CHECK(dist.assumptions_ok);
    CHECK(dist.p.sum() == doctest::Approx(1.0).epsilon(1e-10));
    for (long n = 0; n < dist.p.size(); ++n) CHECK(dist.p(n) >= 0.0);

    // detailed balance holds by construction
    for (int n = 1; n < 40; ++n) {
        auto rs = two_ion_rates(n, p);
        CHECK(dist.p(n) * rs.loss == doctest::Approx(dist.p(n - 1) * rs.gain).epsilon(1e-12));
    }

    // nbar within 10% of the closed-form intensity (10.265625) at this point
    double nbar = nbar_from_distribution(dist);
    CHECK(std::abs(nbar - 10.265625) / 10.265625 < 0.10);
}

TEST_CASE("pn_two_ion against the Liouvillian diagonal at the crossing point") {
    ModelParams p{4.0, 0.5, 1.5, 12.0};
    auto dist = pn_two_ion(p, 64);
    auto diag = liouvillian_diagonal(models::two_ion_model(p, 64));
    CHECK(tv_distance(dist.p, diag) < 0.05);
}

TEST_CASE("pn_two_ion dark phase and heating failure") {
    ModelParams dark{0.15, 1.0, 1.0, 4.0};
    auto dist = pn_two_ion(dark, 32);
    CHECK(dist.p(0) > 0.9);
    auto diag = liouvillian_diagonal(models::two_ion_model(dark, 16));
    CHECK(diag(0) > 0.9);

    ModelParams heat{1.0, 0.5, 1.5, 1.0};
    auto bad = pn_two_ion(heat, 32);
    CHECK_FALSE(bad.normalizable);
}

TEST_CASE("g2_from_distribution reference statistics") {
    auto poisson = from_vector(testutil::poisson_distribution(5.0, 80));
    CHECK(*g2_from_distribution(poisson) == doctest::Approx(1.0).epsilon(1e-6));

    auto thermal = from_vector(testutil::thermal_distribution(5.0, 400));
    CHECK(*g2_from_distribution(thermal) == doctest::Approx(2.0).epsilon(1e-3));

    Eigen::VectorXd fock = Eigen::VectorXd::Zero(8);
    fock(3) = 1.0;
    CHECK(*g2_from_distribution(from_vector(fock)) == doctest::Approx(2.0 / 3.0));

    Eigen::VectorXd vac = Eigen::VectorXd::Zero(4);
    vac(0) = 1.0;
    CHECK_FALSE(g2_from_distribution(from_vector(vac)).has_value());
}

TEST_CASE("g2_two_ion_full equals the recurrence sum (two routes, one object)") {
    for (ModelParams p : {ModelParams{4.0, 1.0, 1.5, 6.0}, ModelParams{4.0, 0.5, 1.5, 12.0},
                          ModelParams{2.0, 0.4, 1.0, 8.0}, ModelParams{3.0, 0.6, 1.2, 10.0}}) {
        auto dist = pn_two_ion(p, 256);
        REQUIRE(dist.normalizable);
        double via_sum = *g2_from_distribution(dist);
        CHECK(g2_two_ion_full(p) == doctest::Approx(via_sum).epsilon(1e-7));
    }
}

TEST_CASE("distribution and closed-form g2 agree across the validity grid") {
    // 5x5 grid inside g_h >= 4 g_c, gamma_c >= 4 gamma_h
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            double gc = 0.4 + 0.15 * i;          // g_h/g_c in [4.2, 6.25]
            double gamc = 7.0 + 2.0 * j;         // gamma_c/gamma_h in [4.7, 10]
            ModelParams p{2.5, gc, 1.5, gamc};
            auto dist = pn_two_ion(p, 64);
            REQUIRE(dist.normalizable);
            double via_sum = *g2_from_distribution(dist);
            double closed = g2_two_ion_full(p);
            CHECK(std::abs(closed - via_sum) / via_sum < 0.05);
        }
}

TEST_CASE("g2_two_ion_full matches the lowest order deep in its domain") {
    // gamma_h/gamma_c <= 0.05 with moderate g_c/gamma_c
    for (ModelParams p : {ModelParams{0.05, 0.5, 0.05, 1.0}, ModelParams{0.1, 0.5, 0.1, 2.0},
                          ModelParams{0.04, 0.3, 0.05, 1.0}, ModelParams{0.08, 0.8, 0.1, 2.0}}) {
        double full = g2_two_ion_full(p);
        double low = g2_lowest_order(p);
        CHECK(std::abs(full - low) / low < 0.02);
    }
    // out-of-domain argument rejected
    ModelParams bad{1.0, 1.0, 4.0, 1.5};
    CHECK_THROWS_AS(g2_two_ion_full(bad), std::invalid_argument);
}

TEST_CASE("g2_lowest_order special values") {
    // thermal value exactly 2 at the documented dark point
    ModelParams dark{std::sqrt(0.125), 1.0, 1.0, 2.0};
    CHECK(g2_lowest_order(dark) == doctest::Approx(2.0).epsilon(1e-12));

    // coherent limit: strongly driven heating, overdamped cooling
    ModelParams coh{10.0, 0.01, 1.0, 1.0};
    CHECK(g2_lowest_order(coh) == doctest::Approx(1.00102).epsilon(1e-4));

    // vanishing numerator on the symmetric manifold 2 g_h^2/gamma_h^2 = g_c^2/gamma_c^2
    ModelParams sym{1.0, std::sqrt(2.0), 1.0, 1.0};
    CHECK(g2_lowest_order(sym) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("g2_overdamped limits and monotonicity") {
    ModelParams coh{10.0, 0.001, 1.0, 1.0};
    CHECK(g2_overdamped(coh) == doctest::Approx(1.0).epsilon(1e-2));
    ModelParams th{0.001, 0.001, 1.0, 1.0};
    CHECK(g2_overdamped(th) == doctest::Approx(2.0).epsilon(1e-4));

    double prev = 0.0;
    for (double gc : {0.1, 0.2, 0.4, 0.8}) {
        ModelParams p{1.0, gc, 1.0, 2.0};
        double v = g2_overdamped(p);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("pn_single_equal_gamma") {
    ModelParams p{0.5, 1.0, 1.0, 1.0};
    auto dist = pn_single_equal_gamma(p, 32);
    CHECK(dist.normalizable);
    CHECK(dist.p.sum() == doctest::Approx(1.0).epsilon(1e-10));

    // g_h -> 0 gives the vacuum
    ModelParams vac{0.0, 1.0, 1.0, 1.0};
    auto v = pn_single_equal_gamma(vac, 16);
    CHECK(v.p(0) == doctest::Approx(1.0));

    // matches the Liouvillian diagonal in the finite-phonon regime
    auto diag = liouvillian_diagonal(models::single_ion_model(p, 32));
    CHECK(tv_distance(dist.p, diag) < 0.05);

    ModelParams mism{0.5, 1.0, 1.0, 1.2};
    CHECK_THROWS_AS(pn_single_equal_gamma(mism, 16), std::invalid_argument);

    ModelParams nonnorm{1.2, 1.0, 1.0, 1.0};
    CHECK_FALSE(pn_single_equal_gamma(nonnorm, 16).normalizable);
}

TEST_CASE("g2_single_equal_gamma exact values and the distribution route") {
    // g_h = g_c limit of the formula is exactly 1.5
    ModelParams eq{1.3, 1.3, 0.9, 0.9};
    CHECK(g2_single_equal_gamma(eq) == doctest::Approx(1.5).epsilon(1e-12));

    // overdamped cooling transition: thermal
    ModelParams od{0.005, 0.01, 1.0, 1.0};
    CHECK(g2_single_equal_gamma(od) == doctest::Approx(2.0).epsilon(1e-3));

    // coherent point of the strong-coupling limit: 7 g_h^2 = (2 sqrt2 - 1) g_c^2
    double u = (2.0 * std::sqrt(2.0) - 1.0) / 7.0;
    ModelParams coh{std::sqrt(u), 1.0, 1.0 / 40.0, 1.0 / 40.0};
    CHECK(g2_single_equal_gamma(coh) == doctest::Approx(1.0).epsilon(0.02));

    // same analytic object as the distribution sum
    for (ModelParams p : {ModelParams{0.5, 1.0, 1.0, 1.0}, ModelParams{0.8, 1.0, 1.0, 1.0},
                          ModelParams{0.3, 0.6, 2.0, 2.0}}) {
        auto dist = pn_single_equal_gamma(p, 64);
        CHECK(g2_single_equal_gamma(p) ==
              doctest::Approx(*g2_from_distribution(dist)).epsilon(1e-8));
    }

    ModelParams mism{0.5, 1.0, 1.0, 1.3};
    CHECK_THROWS_AS(g2_single_equal_gamma(mism), std::invalid_argument);
}

TEST_CASE("g2_single_limits") {
    ModelParams base{0.3, 0.8, 1.0, 1.0};
    CHECK(g2_single_limits(base, SingleIonLimit::CoolingOverdamped) == doctest::Approx(2.0));

    // heating-overdamped formula at g_c = 0 gives 2
    ModelParams nogc{0.3, 0.0, 1.0, 1.0};
    CHECK(g2_single_limits(nogc, SingleIonLimit::HeatingOverdamped) == doctest::Approx(2.0));

    // strong-coupling formula at the special ratio gives 1
    double u = (2.0 * std::sqrt(2.0) - 1.0) / 7.0;
    ModelParams special{std::sqrt(u), 1.0, 1.0, 1.0};
    CHECK(g2_single_limits(special, SingleIonLimit::SmallGamma) == doctest::Approx(1.0).epsilon(1e-12));

    // each limit approaches the exact equal-decay value deep in its domain
    ModelParams cool{0.4, 1.0 / 35.0, 1.0, 1.0};
    CHECK(std::abs(g2_single_limits(cool, SingleIonLimit::CoolingOverdamped) -
                   g2_single_equal_gamma(cool)) /
              g2_single_equal_gamma(cool) <
          0.02);
    ModelParams hod{1.0 / 35.0, 0.6, 1.0, 1.0};
    CHECK(std::abs(g2_single_limits(hod, SingleIonLimit::HeatingOverdamped) -
                   g2_single_equal_gamma(hod)) /
              g2_single_equal_gamma(hod) <
          0.02);
    ModelParams sg{0.5, 1.0, 1.0 / 35.0, 1.0 / 35.0};
    CHECK(std::abs(g2_single_limits(sg, SingleIonLimit::SmallGamma) - g2_single_equal_gamma(sg)) /
              g2_single_equal_gamma(sg) <
          0.02);
}

TEST_CASE("single_ion_level_rates reproduces the equal-decay recurrence") {
    ModelParams p{0.5, 1.0, 1.3, 1.3};
    const double g2r = p.gamma_h * p.gamma_h;
    for (int n : {1, 2, 5, 9}) {
        auto rs = single_ion_level_rates(n, p);
        double f1 = 4.0 * p.kappa_h() * n /
                    (1.0 + 8.0 * p.g_c * p.g_c * (n - 1) / g2r + 8.0 * p.g_h * p.g_h * n / g2r);
        double f2 = 4.0 * p.kappa_c() * n /
                    (1.0 + 8.0 * p.g_c * p.g_c * n / g2r + 8.0 * p.g_h * p.g_h * (n + 1) / g2r);
        CHECK(rs.gain == doctest::Approx(f1).epsilon(1e-10));
        CHECK(rs.loss == doctest::Approx(f2).epsilon(1e-10));
    }

    // vacuum structure
    auto r0 = single_ion_level_rates(0, p);
    CHECK(r0.loss == doctest::Approx(0.0));
    auto r1 = single_ion_level_rates(1, p);
    CHECK(r1.gain > 0.0);
}

TEST_CASE("general single-ion rates against the Liouvillian") {
    ModelParams p{0.9, 1.0, 1.0, 1.4};  // general case, gamma_h != gamma_c
    auto dist = pn_single_ion(p, 48);
    REQUIRE(dist.normalizable);
    REQUIRE(dist.truncation_ok);
    auto diag = liouvillian_diagonal(models::single_ion_model(p, 48));
    double g2_theory = *g2_from_distribution(dist);
    PhononDistribution sim;
    sim.p = diag;
    double g2_sim = *g2_from_distribution(sim);
    CHECK(std::abs(g2_theory - g2_sim) / g2_sim < 0.10);
    CHECK(tv_distance(dist.p, diag) < 0.05);
}

TEST_CASE("two_ion_heating_levels solves the rebuilt linear system") {
    ModelParams p{0.7, 0.3, 1.3, 5.0};
    for (auto [n, np] : std::vector<std::pair<int, int>>{{3, 3}, {2, 5}, {0, 0}, {4, 1}}) {
        Eigen::Vector4cd v = two_ion_heating_levels(n, np, p);

        // independently rebuilt coefficient matrix of the four coupled equations
        const cxd i1(0.0, 1.0);
        const double g = p.g_h, gam = p.gamma_h;
        const double sn = std::sqrt(n + 1.0), snp = std::sqrt(np + 1.0);
        Eigen::Matrix4cd M;
        M << gam, -i1 * g * snp, i1 * g * sn, 0.0,
            -i1 * g * snp, 0.5 * gam, 0.0, i1 * g * sn,
            i1 * g * sn, 0.0, 0.5 * gam, -i1 * g * snp,
            0.0, i1 * g * sn, -i1 * g * snp, gam;
        Eigen::Vector4cd A(gam, 0.0, 0.0, 0.0);
        CHECK((M * v - A).cwiseAbs().maxCoeff() < 1e-12);

        if (n == np) {
            // populations close under the trace and the coherences carry the
            // +/- 2i gamma g sqrt(1+n) / (gamma^2 + 8 g^2 (1+n)) pair
            CHECK((v(0) + v(3)).real() == doctest::Approx(1.0).epsilon(1e-12));
            cxd expect = cxd(0, 2) * gam * g * sn / (gam * gam + 8.0 * g * g * (1.0 + n));
            CHECK(std::abs(v(1) - expect) < 1e-12);
            CHECK(std::abs(v(2) + expect) < 1e-12);
        }
    }
}

} // TEST_SUITE
