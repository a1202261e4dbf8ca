#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "model.hpp"

namespace sica {

// Denominator function psi(h) of the nonstandard scheme. MickensExponential
// is (exp(mu h) - 1) / mu; Identity recovers the plain denominator h.
enum class DenominatorKind { MickensExponential, Identity };

inline double psi(DenominatorKind kind, double mu, double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw NonpositiveStep("step size must be strictly positive, got h = " + std::to_string(h));
    if (!(mu > 0.0))
        throw InvalidParams("psi requires mu > 0, got mu = " + std::to_string(mu));
    return kind == DenominatorKind::MickensExponential ? std::expm1(mu * h) / mu : h;
}

// One step of the positivity-preserving scheme. The force of infection is
// frozen at the current state; the compartments are then solved in the
// order S, I, C, A, each update using the already-advanced values, so every
// numerator and denominator is a sum of nonnegative terms.
inline State nsfd_step(const ModelParams& p, const State& s, double psi_value) {
    const double n = s.N();
    if (!(n > 0.0))
        throw ZeroPopulation("nsfd_step requires N > 0, got N = " + std::to_string(n));
    const double C1 = p.rho + p.phi + p.mu;
    const double C2 = p.alpha + p.mu + p.d;
    const double C3 = p.omega + p.mu;
    const double lam = p.beta * (s.I + p.eta_C * s.C + p.eta_A * s.A) / n;

    State next;
    next.S = (s.S + p.Lambda * psi_value) / (1.0 + p.mu * psi_value + psi_value * lam);

    const double a2 = 1.0 + C2 * psi_value;
    const double a3 = 1.0 + C3 * psi_value;
    const double den = (1.0 + C1 * psi_value) * a2 * a3
                     - p.alpha * p.rho * psi_value * psi_value * a3
                     - p.omega * p.phi * psi_value * psi_value * a2;
    next.I = ((s.I + psi_value * lam * next.S) * a2 * a3
              + p.alpha * psi_value * s.A * a3
              + p.omega * psi_value * s.C * a2) / den;
    next.C = (p.phi * psi_value * next.I + s.C) / a3;
    next.A = (p.rho * psi_value * next.I + s.A) / a2;
    return next;
}

struct Trajectory {
    double h;
    DenominatorKind denominator;
    double psi_value;
    ModelParams params;
    std::vector<State> states;  // states[n] is the state after n steps

    std::size_t size() const { return states.size(); }
    const State& operator[](std::size_t i) const { return states[i]; }
};

inline Trajectory simulate(const ModelParams& p, const State& s0, double h, std::size_t n_steps,
                           DenominatorKind kind = DenominatorKind::MickensExponential) {
    Trajectory traj{h, kind, psi(kind, p.mu, h), p, {}};
    traj.states.reserve(n_steps + 1);
    traj.states.push_back(s0);
    for (std::size_t i = 0; i < n_steps; ++i)
        traj.states.push_back(nsfd_step(p, traj.states.back(), traj.psi_value));
    return traj;
}

// Population bound Lambda/mu + (N0 - Lambda/mu) (1 + mu psi)^{-n}, which the
// scheme satisfies exactly up to the d A_n removal term.
inline double gronwall_bound(const ModelParams& p, double N0, double psi_value, std::size_t n) {
    if (!(N0 > 0.0))
        throw InvalidParams("gronwall_bound requires N0 > 0, got N0 = " + std::to_string(N0));
    const double cap = p.Lambda / p.mu;
    return cap + (N0 - cap) * std::pow(1.0 / (1.0 + p.mu * psi_value), static_cast<double>(n));
}

} // namespace sica
