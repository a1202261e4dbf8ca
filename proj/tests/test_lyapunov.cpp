#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sica/data.hpp"
#include "sica/lyapunov.hpp"
#include "test_util.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace sica;

namespace {

ModelParams low_transmission() {
    ModelParams p = cape_verde_params();
    p.beta = 0.1;  // brings R0 to ~0.654
    return p;
}

} // namespace

TEST_CASE("g is nonnegative with a single zero at 1", "[lyapunov]") {
    CHECK(lyapunov_g(1.0) == 0.0);
    for (double x : {0.01, 0.3, 0.9, 1.1, 3.0, 100.0}) REQUIRE(lyapunov_g(x) > 0.0);
}

TEST_CASE("disease-free functional decays from the 1987 start", "[lyapunov]") {
    const ModelParams p = low_transmission();
    const Trajectory traj = simulate(p, cape_verde_initial(1), 1.0, 1000);
    const LyapunovSeries series = lyapunov_dfe(traj);
    REQUIRE(series.kind == LyapunovKind::DFE_V);
    REQUIRE(series.values.size() == 1000);
    REQUIRE(series.differences.size() == 999);
    CHECK(series.start_index == 1);
    CHECK(series.monotone);
    CHECK(series.monotone_from == 0);  // no violation anywhere, first step included
    for (double v : series.values) REQUIRE(v >= 0.0);
    CHECK(series.values.back() < 1e-2 * series.values.front());
}

TEST_CASE("disease-free functional tolerates one early kick from a slaved start", "[lyapunov]") {
    // Initial condition 3 loads A far above its slaved level; the functional
    // rises once at n = 0 and is strictly decreasing ever after, which is
    // exactly what the verdict window (start_index 1) certifies.
    const ModelParams p = low_transmission();
    const Trajectory traj = simulate(p, cape_verde_initial(3), 1.0, 1000);
    const LyapunovSeries series = lyapunov_dfe(traj);
    CHECK(series.start_index == 1);
    CHECK(series.differences[0] > 0.0);
    CHECK(series.monotone);
    CHECK(series.monotone_from == 1);
}

TEST_CASE("disease-free functional is monotone from every case-study start", "[lyapunov]") {
    const ModelParams p = low_transmission();
    for (int preset : {1, 2, 3, 4}) {
        const Trajectory traj = simulate(p, cape_verde_initial(preset), 1.0, 2000);
        const LyapunovSeries series = lyapunov_dfe(traj);
        REQUIRE(series.monotone);
        for (double v : series.values) REQUIRE(v >= 0.0);
    }
}

TEST_CASE("disease-free increment matches its closed form", "[lyapunov]") {
    // V(n+1) - V(n) = psi (lambda_{n+1} S_{n+2} - D I_{n+1} / (C2 C3))
    std::mt19937_64 rng(1111);
    int low_r0 = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const ModelParams p = testutil::random_params(rng);
        const DerivedConstants dc = derived_constants(p);
        if (dc.r0() >= 1.0) continue;
        ++low_r0;
        const Trajectory traj = simulate(p, testutil::random_state(rng), 1.0, 200);
        const LyapunovSeries series = lyapunov_dfe(traj);
        for (std::size_t n = 0; n + 1 < series.values.size(); ++n) {
            const double lam_next = force_of_infection(p, traj[n + 1]);
            const double expected =
                traj.psi_value *
                (lam_next * traj[n + 2].S - dc.D_script * traj[n + 1].I / (dc.C2 * dc.C3));
            const double scale =
                std::max({1.0, std::abs(series.values[n]), std::abs(series.values[n + 1])});
            REQUIRE(std::abs(series.differences[n] - expected) <= 1e-9 * scale);
        }
    }
    REQUIRE(low_r0 >= 10);
}

TEST_CASE("disease-free functional grows under supercritical transmission", "[lyapunov]") {
    const Trajectory traj = simulate(cape_verde_params(), cape_verde_initial(1), 1.0, 100);
    const LyapunovSeries series = lyapunov_dfe(traj);
    CHECK_FALSE(series.monotone);
    CHECK(series.values.back() > series.values.front());
}

TEST_CASE("verdict window starts at the capacity threshold for inflated starts", "[lyapunov]") {
    const ModelParams p = low_transmission();
    const double cap = p.Lambda / p.mu;
    const Trajectory traj = simulate(p, {2.0 * cap, 61.0, 0.0, 0.0}, 1.0, 2000);
    const LyapunovSeries series = lyapunov_dfe(traj);
    REQUIRE(series.start_index > 1);  // S spends hundreds of steps above capacity
    REQUIRE(series.start_index < series.differences.size());
    CHECK(series.monotone);
    const std::size_t last_above = series.start_index - 1;
    REQUIRE(traj[last_above + 1].S >= cap * (1.0 + 1e-6));
    REQUIRE(traj[series.start_index + 1].S < cap * (1.0 + 1e-6));
}

TEST_CASE("disease-free functional needs two states", "[lyapunov]") {
    const ModelParams p = low_transmission();
    const Trajectory single = simulate(p, cape_verde_initial(1), 1.0, 0);
    CHECK_THROWS_AS(lyapunov_dfe(single), TrajectoryTooShort);
}

TEST_CASE("endemic functional decays from redistributed starts", "[lyapunov]") {
    const ModelParams p = cape_verde_params();
    for (int preset : {2, 3, 4}) {
        const Trajectory traj = simulate(p, cape_verde_initial(preset), 1.0, 2000);
        const LyapunovSeries series = lyapunov_ee(traj);
        REQUIRE(series.kind == LyapunovKind::EE_Vtilde);
        REQUIRE(series.values.size() == traj.size());
        REQUIRE(series.start_index == 0);
        REQUIRE(series.monotone);
        for (double v : series.values) REQUIRE(v >= 0.0);
        CHECK(series.values.back() < 1e-6 * series.values.front());
    }
}

TEST_CASE("endemic functional accepts the 1987 start once the cone is entered", "[lyapunov]") {
    // The 1987 record has C = A = 0, outside the functional's domain; one
    // step later every compartment is positive and the tail qualifies.
    const ModelParams p = cape_verde_params();
    const Trajectory traj = simulate(p, cape_verde_initial(1), 1.0, 2000);
    CHECK_THROWS_AS(lyapunov_ee(traj), NonpositiveCompartment);
    Trajectory tail = traj;
    tail.states.erase(tail.states.begin());
    const LyapunovSeries series = lyapunov_ee(tail);
    CHECK(series.monotone);
    CHECK(series.values.back() < 1e-6 * series.values.front());
}

TEST_CASE("endemic functional vanishes at the endemic point", "[lyapunov]") {
    const ModelParams p = cape_verde_params();
    const State ee = endemic_equilibrium(p).state;
    const Trajectory traj = simulate(p, ee, 1.0, 10);
    const LyapunovSeries series = lyapunov_ee(traj);
    for (double v : series.values) REQUIRE(std::abs(v) < 1e-12);
}

TEST_CASE("endemic functional requires a supercritical R0 and a nonempty run", "[lyapunov]") {
    const ModelParams p = low_transmission();
    const Trajectory traj = simulate(p, cape_verde_initial(2), 1.0, 10);
    CHECK_THROWS_AS(lyapunov_ee(traj), NoEndemicEquilibrium);

    Trajectory empty = simulate(cape_verde_params(), cape_verde_initial(2), 1.0, 0);
    empty.states.clear();
    CHECK_THROWS_AS(lyapunov_ee(empty), TrajectoryTooShort);
}
