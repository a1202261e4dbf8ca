#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "sica/data.hpp"
#include "sica/reference.hpp"

using Catch::Matchers::WithinRel;
using namespace sica;

namespace {

Trajectory wrap_reference(const ModelParams& p, const std::vector<State>& states, double h) {
    return Trajectory{h, DenominatorKind::Identity, h, p, states};
}

} // namespace

TEST_CASE("surveillance record shape and endpoints", "[data]") {
    const auto& table = load_cape_verde();
    REQUIRE(table.size() == 28);
    CHECK(table.front().year == 1987);
    CHECK(table.front().cases == 61.0);
    CHECK(table.front().population == 323972.0);
    CHECK(table.back().year == 2014);
    CHECK(table.back().cases == 4946.0);
    CHECK(table.back().population == 513906.0);
    for (std::size_t i = 1; i < table.size(); ++i) {
        CHECK(table[i].year == table[i - 1].year + 1);
        CHECK(table[i].cases >= table[i - 1].cases);  // cumulative counts never shrink
        CHECK(table[i].population > 0.0);
    }
}

TEST_CASE("bundled csv matches the in-memory record byte for byte", "[data]") {
    std::ostringstream expected;
    expected << "year,cases,population\n";
    for (const ObservedPoint& row : load_cape_verde())
        expected << row.year << ',' << static_cast<long long>(row.cases) << ','
                 << static_cast<long long>(row.population) << '\n';

    std::ifstream in(std::string(SICA_DATA_DIR) + "/cape_verde.csv", std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream actual;
    actual << in.rdbuf();
    CHECK(actual.str() == expected.str());
}

TEST_CASE("calibrated parameter set", "[data]") {
    const ModelParams p = cape_verde_params();
    CHECK(p.Lambda == 13045.0);
    CHECK(p.mu == 1.0 / 69.54);
    CHECK(p.beta == 0.695);
    CHECK(p.phi == 1.0);
    CHECK(p.rho == 0.1);
    CHECK(p.alpha == 0.33);
    CHECK(p.omega == 1.0 / 11.0);
    CHECK(p.d == 1.0);
    CHECK(p.eta_C == 0.04);
    CHECK(p.eta_A == 1.35);
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("initial-condition presets", "[data]") {
    const State s1 = cape_verde_initial(1);
    CHECK(s1.S == 323911.0);
    CHECK(s1.I == 61.0);
    CHECK(s1.C == 0.0);
    CHECK(s1.A == 0.0);

    const State s2 = cape_verde_initial(2);
    CHECK(s2.S == 323911.0 / 2.0);
    CHECK(s2.I == 61.0 + 323911.0 / 2.0);
    CHECK(s2.C == 1.0e4);
    CHECK(s2.A == 4.0e4);

    const State s3 = cape_verde_initial(3);
    CHECK(s3.S == 323911.0 / 3.0);
    CHECK(s3.I == 61.0);
    CHECK(s3.C == 4.0e4);
    CHECK(s3.A == 323911.0 / 3.0);

    const State s4 = cape_verde_initial(4);
    CHECK(s4.S == 3.0 * 323911.0 / 2.0);
    CHECK(s4.I == 61.0 + 323911.0 / 4.0);
    CHECK(s4.C == 5.0e5);
    CHECK(s4.A == 323911.0 / 5.0);

    CHECK_THROWS_AS(cape_verde_initial(0), InvalidParams);
    CHECK_THROWS_AS(cape_verde_initial(5), InvalidParams);
}

TEST_CASE("cumulative incidence along the case-study run", "[data]") {
    const ModelParams p = cape_verde_params();
    const Trajectory traj = simulate(p, cape_verde_initial(1), 1.0, 27);
    const YearlySeries series = cumulative_cases(traj);
    REQUIRE(series.years.size() == 28);
    REQUIRE(series.cases.size() == 28);
    CHECK(series.years.front() == 0);
    CHECK(series.years.back() == 27);
    CHECK(series.cases.front() == 61.0);
    CHECK_THAT(series.cases.back(), WithinRel(4615.468104561153, 1e-12));
    for (std::size_t i = 1; i < series.cases.size(); ++i)
        CHECK(series.cases[i] >= series.cases[i - 1]);
}

TEST_CASE("halving the step leaves the yearly series close", "[data]") {
    const ModelParams p = cape_verde_params();
    const YearlySeries coarse = cumulative_cases(simulate(p, cape_verde_initial(1), 1.0, 27));
    const YearlySeries fine = cumulative_cases(simulate(p, cape_verde_initial(1), 0.5, 54));
    REQUIRE(fine.years.size() == 28);
    // First-order step dependence moves the 27-year total by about 11%.
    CHECK(std::abs(fine.cases.back() - coarse.cases.back()) < 0.12 * coarse.cases.back());
}

TEST_CASE("cumulative incidence rejects steps that do not divide a year", "[data]") {
    const ModelParams p = cape_verde_params();
    CHECK_THROWS_AS(cumulative_cases(simulate(p, cape_verde_initial(1), 0.3, 10)), InvalidParams);
    CHECK_THROWS_AS(cumulative_cases(simulate(p, cape_verde_initial(1), 2.0, 10)), InvalidParams);
}

TEST_CASE("cumulative incidence enforces the horizon", "[data]") {
    const ModelParams p = cape_verde_params();
    const Trajectory traj = simulate(p, cape_verde_initial(1), 1.0, 10);
    CHECK_THROWS_AS(cumulative_cases(traj, 27), HorizonTooShort);
    CHECK_NOTHROW(cumulative_cases(traj, 10));
}

TEST_CASE("fit metrics on a perfect and a shifted series", "[data]") {
    YearlySeries model;
    for (std::size_t i = 0; i < load_cape_verde().size(); ++i) {
        model.years.push_back(static_cast<int>(i));
        model.cases.push_back(load_cape_verde()[i].cases);
    }
    const FitReport perfect = fit_metrics(model);
    REQUIRE(perfect.years.size() == 28);
    CHECK(perfect.rmse == 0.0);
    CHECK(perfect.max_abs_error == 0.0);
    CHECK(perfect.years.front() == 1987);
    CHECK(perfect.years.back() == 2014);

    for (double& c : model.cases) c += 10.0;
    const FitReport shifted = fit_metrics(model);
    CHECK_THAT(shifted.rmse, WithinRel(10.0, 1e-12));
    CHECK_THAT(shifted.max_abs_error, WithinRel(10.0, 1e-12));
    for (double r : shifted.residuals) CHECK_THAT(r, WithinRel(10.0, 1e-12));
}

TEST_CASE("fit metrics reject a series that misses observed years", "[data]") {
    YearlySeries short_series;
    for (int i = 0; i < 10; ++i) {
        short_series.years.push_back(i);
        short_series.cases.push_back(100.0 * i);
    }
    CHECK_THROWS_AS(fit_metrics(short_series), LengthMismatch);
    CHECK_THROWS_AS(fit_metrics(short_series, 2000), LengthMismatch);
}

TEST_CASE("case-study fit lands within the accepted band", "[data]") {
    const ModelParams p = cape_verde_params();
    const Trajectory traj = simulate(p, cape_verde_initial(1), 1.0, 27);
    const FitReport rep = fit_metrics(cumulative_cases(traj));
    CHECK(rep.residuals.front() == 0.0);  // year zero matches by construction
    CHECK(std::abs(rep.residuals.back()) <= 0.15 * 4946.0);
}

TEST_CASE("positive scheme and reference agree on yearly cumulative incidence", "[data]") {
    const ModelParams p = cape_verde_params();
    const State s0 = cape_verde_initial(1);
    const double h = 0.01;
    const std::size_t n = 2700;
    const YearlySeries ours = cumulative_cases(simulate(p, s0, h, n));
    const auto ref_states = reference_trajectory(ReferenceKind::RK4, p, s0, h, n);
    const YearlySeries ref = cumulative_cases(wrap_reference(p, ref_states, h));
    REQUIRE(ours.cases.size() == ref.cases.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < ours.cases.size(); ++i) {
        const double r = ours.cases[i] - ref.cases[i];
        sq += r * r;
    }
    const double rmse = std::sqrt(sq / static_cast<double>(ours.cases.size()));
    CHECK(rmse < 0.01 * ref.cases.back());
}
