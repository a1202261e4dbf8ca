#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "nsfd.hpp"

namespace sica {

// Conventional one-step integrators used as accuracy and positivity
// baselines. They operate on signed states: no clamping, no projection, so
// a scheme that leaves the positive cone does so visibly.
enum class ReferenceKind { ExplicitEuler, RK4 };

namespace detail {

inline State axpy(const State& s, double a, const StateDerivative& d) {
    return {s.S + a * d.dS, s.I + a * d.dI, s.C + a * d.dC, s.A + a * d.dA};
}

} // namespace detail

inline State reference_step(ReferenceKind kind, const ModelParams& p, const State& s, double h) {
    if (!(h > 0.0))
        throw NonpositiveStep("step size must be strictly positive, got h = " + std::to_string(h));
    if (kind == ReferenceKind::ExplicitEuler) return detail::axpy(s, h, rhs(p, s));
    const StateDerivative k1 = rhs(p, s);
    const StateDerivative k2 = rhs(p, detail::axpy(s, 0.5 * h, k1));
    const StateDerivative k3 = rhs(p, detail::axpy(s, 0.5 * h, k2));
    const StateDerivative k4 = rhs(p, detail::axpy(s, h, k3));
    const double w = h / 6.0;
    return {s.S + w * (k1.dS + 2.0 * k2.dS + 2.0 * k3.dS + k4.dS),
            s.I + w * (k1.dI + 2.0 * k2.dI + 2.0 * k3.dI + k4.dI),
            s.C + w * (k1.dC + 2.0 * k2.dC + 2.0 * k3.dC + k4.dC),
            s.A + w * (k1.dA + 2.0 * k2.dA + 2.0 * k3.dA + k4.dA)};
}

inline std::vector<State> reference_trajectory(ReferenceKind kind, const ModelParams& p,
                                               const State& s0, double h, std::size_t n_steps) {
    std::vector<State> states;
    states.reserve(n_steps + 1);
    states.push_back(s0);
    for (std::size_t i = 0; i < n_steps; ++i)
        states.push_back(reference_step(kind, p, states.back(), h));
    return states;
}

enum class SchemeKind { NSFD, ExplicitEuler, RK4 };

namespace detail {

inline bool has_negative(const State& s) {
    return s.S < 0.0 || s.I < 0.0 || s.C < 0.0 || s.A < 0.0;
}

} // namespace detail

// Runs n_steps of the scheme for each step size in the grid and returns the
// smallest h whose run produces a negative compartment (or dies because the
// population hit zero mid-step). nullopt means every grid point stayed in
// the positive cone.
inline std::optional<double> positivity_scan(const ModelParams& p, const State& s0,
                                             SchemeKind scheme, const std::vector<double>& h_grid,
                                             std::size_t n_steps = 1000) {
    std::vector<double> grid = h_grid;
    std::sort(grid.begin(), grid.end());
    for (double h : grid) {
        bool violated = false;
        try {
            if (scheme == SchemeKind::NSFD) {
                const Trajectory traj = simulate(p, s0, h, n_steps);
                for (const State& s : traj.states)
                    if (detail::has_negative(s)) { violated = true; break; }
            } else {
                const ReferenceKind kind = scheme == SchemeKind::ExplicitEuler
                                               ? ReferenceKind::ExplicitEuler
                                               : ReferenceKind::RK4;
                State s = s0;
                for (std::size_t i = 0; i < n_steps && !violated; ++i) {
                    s = reference_step(kind, p, s, h);
                    violated = detail::has_negative(s);
                }
            }
        } catch (const ZeroPopulation&) {
            violated = true;
        }
        if (violated) return h;
    }
    return std::nullopt;
}

} // namespace sica
