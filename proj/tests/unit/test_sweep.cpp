#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>

#include "core/lindblad.hpp"
#include "core/models.hpp"
#include "core/report.hpp"
#include "core/sweep.hpp"

using namespace phl;
using namespace phl::sweep;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.model = {ModelKind::TwoIon, LdOrder::First, false, 16};
    spec.fixed = ModelParams{1.0, 1.0, 1.5, 3.0};
    spec.axis1 = {"g_c", 0.7, 1.4, 2, true};
    spec.axis2 = {"gamma_c", 2.0, 8.0, 2, true};
    spec.outputs = {Output::NbarSim, Output::NbarMf, Output::PhaseLabel, Output::TruncationOk};
    spec.n_start = 8;
    spec.n_cap = 64;
    return spec;
}

} // namespace

TEST_SUITE("sweep") {

TEST_CASE("grid shape and header") {
    auto result = run(small_spec(), 1);
    CHECK(result.rows.size() == 4);
    std::string csv = result.to_csv();
    std::istringstream is(csv);
    std::string header;
    std::getline(is, header);
    CHECK(header == "g_c,gamma_c,nbar_sim,nbar_mf,phase,truncation_ok,status");
    int lines = 0;
    for (std::string line; std::getline(is, line);)
        if (!line.empty()) ++lines;
    CHECK(lines == 4);
}

TEST_CASE("parallel execution is byte-identical to serial") {
    auto spec = small_spec();
    spec.axis1.count = 3;
    spec.axis2.count = 3;
    auto a = run(spec, 1);
    auto b = run(spec, 8);
    CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("row-major order and axis values") {
    auto spec = small_spec();
    auto vals1 = axis_values(spec.axis1);
    auto vals2 = axis_values(spec.axis2);
    auto result = run(spec, 2);
    int idx = 0;
    for (double v1 : vals1)
        for (double v2 : vals2) {
            CHECK(result.rows[idx].a1 == doctest::Approx(v1));
            CHECK(result.rows[idx].a2 == doctest::Approx(v2));
            ++idx;
        }

    Axis lin{"r", 0.0, 1.0, 5, false};
    auto lv = axis_values(lin);
    CHECK(lv[1] == doctest::Approx(0.25));
    Axis lg{"g_c", 1.0, 100.0, 3, true};
    auto gv = axis_values(lg);
    CHECK(gv[1] == doctest::Approx(10.0));
}

TEST_CASE("phase labels flip exactly across the threshold boundary") {
    // one axis crossing kappa_h = kappa_c at fixed gamma ratio
    SweepSpec spec;
    spec.model = {ModelKind::TwoIon, LdOrder::First, false, 8};
    spec.fixed = ModelParams{1.0, 1.0, 1.5, 3.0};
    spec.axis1 = {"g_c", 0.5, 3.0, 8, true};
    spec.axis2 = {"eta_c", 0.0, 0.0, 1, false};
    spec.outputs = {Output::PhaseLabel};
    auto result = run(spec, 1);
    // kappa_c crosses kappa_h = 2/3 at g_c = sqrt(2): labels must be Lasing
    // below, Dark above, with no other labels
    for (const Row& row : result.rows) {
        bool lasing_expected = row.a1 * row.a1 / 3.0 < 2.0 / 3.0;
        CHECK(row.texts[0] == (lasing_expected ? "Lasing" : "Dark"));
    }
}

TEST_CASE("failure rows carry NaN and a status code") {
    SweepSpec spec;
    spec.model = {ModelKind::TwoIon, LdOrder::First, false, 8};
    spec.fixed = ModelParams{1.0, 1.0, 1.5, 3.0};
    // heating phase: gamma_c below gamma_h
    spec.axis1 = {"g_c", 0.4, 0.4, 1, false};
    spec.axis2 = {"gamma_c", 0.5, 0.5, 1, false};
    spec.outputs = {Output::NbarSim, Output::NbarMf, Output::PhaseLabel};
    spec.n_cap = 32;
    auto result = run(spec, 1);
    REQUIRE(result.rows.size() == 1);
    const Row& row = result.rows[0];
    CHECK(row.status == kTruncationFailure);
    CHECK(std::isnan(row.values[0]));      // nbar_sim unusable
    CHECK(std::isnan(row.values[1]));      // mean-field value masked (negative)
    CHECK(row.texts[2] == "Heating");
    CHECK(result.to_csv().find("NaN") != std::string::npos);
}

TEST_CASE("out-of-range grid values fail their cells, not the sweep") {
    SweepSpec spec;
    spec.model = {ModelKind::TwoIon, LdOrder::First, false, 8};
    spec.fixed = ModelParams{1.0, 1.0, 1.5, 3.0};
    spec.axis1 = {"eta_h", 0.5, 1.5, 3, false};  // crosses the eta < 1 bound
    spec.axis2 = {"gamma_c", 3.0, 3.0, 1, false};
    spec.outputs = {Output::PhaseLabel, Output::NbarMf};
    auto result = run(spec, 2);
    REQUIRE(result.rows.size() == 3);
    CHECK(result.rows[0].status == kOk);                  // eta_h = 0.5
    CHECK(result.rows[2].status == kNumericFailure);      // eta_h = 1.5
    CHECK(result.rows[2].texts[0] == "NaN");
    CHECK(std::isnan(result.rows[2].values[1]));
}

TEST_CASE("spec validation") {
    auto spec = small_spec();
    spec.axis2.param = spec.axis1.param;
    CHECK_THROWS_AS(run(spec, 1), std::invalid_argument);
    spec = small_spec();
    spec.axis1.param = "bogus";
    CHECK_THROWS_AS(run(spec, 1), std::invalid_argument);
    spec = small_spec();
    spec.outputs.clear();
    CHECK_THROWS_AS(run(spec, 1), std::invalid_argument);
}

TEST_CASE("steady report JSON carries schema version and diagnostics") {
    ModelParams p{1.0, 1.0, 1.5, 3.0};
    ModelSpec spec{ModelKind::TwoIon, LdOrder::First, false, 24};
    auto model = models::build(spec, p);
    auto rep = lindblad::steady_state(lindblad::build_liouvillian(model.H, model.jumps));
    auto j = nlohmann::json::parse(report::steady_report_json(spec, p, rep));
    CHECK(j["schema_version"] == 1);
    CHECK(j["model"]["kind"] == "two-ion");
    CHECK(j["analytics"]["phase"] == "Lasing");
    CHECK(j["analytics"]["iss"]["value"].get<double>() == doctest::Approx(0.5625));
    CHECK(j["truncation"]["ok"].get<bool>());
    // validity annotations present at this point (g_h < 4 g_c)
    CHECK(j["analytics"]["assumption_violations"].size() > 0);
}

} // TEST_SUITE
