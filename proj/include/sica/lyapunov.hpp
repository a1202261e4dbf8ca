#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "nsfd.hpp"

namespace sica {

enum class LyapunovKind { DFE_V, EE_Vtilde };

// Slack applied when classifying a difference as nonincreasing.
inline constexpr double kLyapunovSlack = 1e-12;

struct LyapunovSeries {
    LyapunovKind kind;
    std::vector<double> values;       // V(n) along the trajectory
    std::vector<double> differences;  // V(n+1) - V(n)
    std::size_t start_index;          // first difference index the verdict covers
    bool monotone;                    // differences[n] <= slack for all n >= start_index
    std::size_t monotone_from;        // empirical first index after the last violation
};

// g(x) = x - 1 - ln x, the Volterra-type building block; g >= 0 with
// equality only at x = 1. Caller guarantees x > 0.
inline double lyapunov_g(double x) { return x - 1.0 - std::log(x); }

namespace detail {

inline void finish_series(LyapunovSeries& series) {
    const auto& d = series.differences;
    series.monotone = true;
    for (std::size_t n = series.start_index; n < d.size(); ++n)
        if (d[n] > kLyapunovSlack) { series.monotone = false; break; }
    series.monotone_from = 0;
    for (std::size_t n = d.size(); n-- > 0;)
        if (d[n] > kLyapunovSlack) { series.monotone_from = n + 1; break; }
}

} // namespace detail

// Linear functional V(n) = I_n + (omega/C3) C_n + (alpha/C2) A_n
//                        + psi lambda_n S_{n+1}
// whose exact increment is psi (lambda_{n+1} S_{n+2} - D I_{n+1} / (C2 C3)).
// The increment sign is only controlled once S has dropped under the
// carrying capacity Lambda/mu, so the verdict starts at the first index
// with S_{n+1} below Lambda/mu (1 + 1e-6) from there on, and never before
// index 1: the very first difference can be positive for initial states
// far from the slow manifold even though every later one is negative.
inline LyapunovSeries lyapunov_dfe(const Trajectory& traj) {
    if (traj.size() < 2)
        throw TrajectoryTooShort("DFE Lyapunov series needs at least 2 states, got " +
                                 std::to_string(traj.size()));
    const ModelParams& p = traj.params;
    const DerivedConstants dc = derived_constants(p);
    const std::size_t len = traj.size() - 1;

    LyapunovSeries series;
    series.kind = LyapunovKind::DFE_V;
    series.values.reserve(len);
    for (std::size_t n = 0; n < len; ++n) {
        const State& s = traj[n];
        const double lambda_n = force_of_infection(p, s);
        series.values.push_back(s.I + (p.omega / dc.C3) * s.C + (p.alpha / dc.C2) * s.A +
                                traj.psi_value * lambda_n * traj[n + 1].S);
    }
    series.differences.resize(len > 0 ? len - 1 : 0);
    for (std::size_t n = 0; n + 1 < len; ++n)
        series.differences[n] = series.values[n + 1] - series.values[n];

    const double threshold = (p.Lambda / p.mu) * (1.0 + 1e-6);
    std::size_t threshold_start = 0;
    for (std::size_t n = len; n-- > 0;)
        if (traj[n + 1].S >= threshold) { threshold_start = n + 1; break; }
    series.start_index = std::max<std::size_t>(threshold_start, 1);

    detail::finish_series(series);
    return series;
}

// Volterra functional around the endemic point,
//   Vt(n) = g(S_n/S*)/(psi I*) + g(I_n/I*)/(psi S*)
//         + omega C* g(C_n/C*)/(psi C3 S* I*) + alpha A* g(A_n/A*)/(psi C2 S* I*).
// Every compartment of every state must be strictly positive.
inline LyapunovSeries lyapunov_ee(const Trajectory& traj) {
    if (traj.size() < 1)
        throw TrajectoryTooShort("endemic Lyapunov series needs at least 1 state");
    const ModelParams& p = traj.params;
    const DerivedConstants dc = derived_constants(p);
    const Equilibrium eq = endemic_equilibrium(p);
    const State& e = eq.state;
    const double ps = traj.psi_value;
    const double wS = 1.0 / (ps * e.I);
    const double wI = 1.0 / (ps * e.S);
    const double wC = p.omega * e.C / (ps * dc.C3 * e.S * e.I);
    const double wA = p.alpha * e.A / (ps * dc.C2 * e.S * e.I);

    LyapunovSeries series;
    series.kind = LyapunovKind::EE_Vtilde;
    series.values.reserve(traj.size());
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const State& s = traj[n];
        if (!(s.S > 0.0) || !(s.I > 0.0) || !(s.C > 0.0) || !(s.A > 0.0))
            throw NonpositiveCompartment("endemic Lyapunov functional needs S,I,C,A > 0 at index " +
                                         std::to_string(n));
        series.values.push_back(wS * lyapunov_g(s.S / e.S) + wI * lyapunov_g(s.I / e.I) +
                                wC * lyapunov_g(s.C / e.C) + wA * lyapunov_g(s.A / e.A));
    }
    series.differences.resize(traj.size() - 1);
    for (std::size_t n = 0; n + 1 < traj.size(); ++n)
        series.differences[n] = series.values[n + 1] - series.values[n];
    series.start_index = 0;
    detail::finish_series(series);
    return series;
}

} // namespace sica
