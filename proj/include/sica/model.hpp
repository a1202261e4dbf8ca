#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sica {

// Parameters of the four-compartment S/I/C/A transmission model.
//
//   S' = Lambda - lambda(t) S - mu S
//   I' = lambda(t) S - (rho + phi + mu) I + alpha A + omega C
//   C' = phi I - (omega + mu) C
//   A' = rho I - (alpha + mu + d) A
//
// with force of infection lambda = beta (I + eta_C C + eta_A A) / N.
struct ModelParams {
    double Lambda;  // recruitment rate into S
    double mu;      // natural death rate
    double beta;    // transmission coefficient
    double phi;     // rate I -> C (treatment uptake)
    double rho;     // rate I -> A (progression)
    double alpha;   // rate A -> I (treatment of AIDS cases)
    double omega;   // rate C -> I (treatment default)
    double d;       // AIDS-induced death rate
    double eta_C;   // relative infectiousness of C (expected <= 1)
    double eta_A;   // relative infectiousness of A (expected >= 1)

    // All parameters must be strictly positive. Throws InvalidParams.
    void validate() const {
        const struct { const char* name; double value; } fields[] = {
            {"Lambda", Lambda}, {"mu", mu},       {"beta", beta},
            {"phi", phi},       {"rho", rho},     {"alpha", alpha},
            {"omega", omega},   {"d", d},         {"eta_C", eta_C},
            {"eta_A", eta_A},
        };
        for (const auto& f : fields) {
            if (!(f.value > 0.0) || !std::isfinite(f.value))
                throw InvalidParams(std::string("parameter ") + f.name +
                                    " must be strictly positive, got " +
                                    std::to_string(f.value));
        }
    }

    // Modeling-assumption violations that are legal but suspicious.
    std::vector<std::string> assumption_warnings() const {
        std::vector<std::string> w;
        if (eta_C > 1.0)
            w.push_back("eta_C = " + std::to_string(eta_C) +
                        " exceeds 1; chronic-stage infectiousness is expected to be reduced");
        if (eta_A < 1.0)
            w.push_back("eta_A = " + std::to_string(eta_A) +
                        " is below 1; AIDS-stage infectiousness is expected to be elevated");
        return w;
    }
};

// Grouped rate constants and the two basic-reproduction-number building
// blocks that appear throughout the equilibrium and stability formulas.
struct DerivedConstants {
    double C1;        // rho + phi + mu
    double C2;        // alpha + mu + d
    double C3;        // omega + mu
    double N_script;  // beta (C2 C3 + C3 eta_A rho + C2 eta_C phi)
    double D_script;  // C1 C2 C3 - C3 alpha rho - C2 omega phi

    double r0() const { return N_script / D_script; }
};

inline DerivedConstants derived_constants(const ModelParams& p) {
    DerivedConstants dc;
    dc.C1 = p.rho + p.phi + p.mu;
    dc.C2 = p.alpha + p.mu + p.d;
    dc.C3 = p.omega + p.mu;
    dc.N_script = p.beta * (dc.C2 * dc.C3 + dc.C3 * p.eta_A * p.rho + dc.C2 * p.eta_C * p.phi);
    dc.D_script = dc.C1 * dc.C2 * dc.C3 - dc.C3 * p.alpha * p.rho - dc.C2 * p.omega * p.phi;
    return dc;
}

// Rearranged form of D_script with no subtractions; agrees with the
// defining form to rounding error and shows D_script > 0 outright.
inline double d_script_alt(const ModelParams& p) {
    const double C2 = p.alpha + p.mu + p.d;
    const double C3 = p.omega + p.mu;
    return p.rho * C3 * (p.mu + p.d) + p.mu * C2 * (C3 + p.phi);
}

struct State {
    double S;
    double I;
    double C;
    double A;

    double N() const { return S + I + C + A; }
};

struct StateDerivative {
    double dS;
    double dI;
    double dC;
    double dA;
};

// lambda = beta (I + eta_C C + eta_A A) / N. Throws ZeroPopulation when
// N <= 0; the model is undefined there.
inline double force_of_infection(const ModelParams& p, const State& s) {
    const double n = s.N();
    if (!(n > 0.0))
        throw ZeroPopulation("force of infection requires N > 0, got N = " + std::to_string(n));
    return p.beta * (s.I + p.eta_C * s.C + p.eta_A * s.A) / n;
}

// Continuous-time right-hand side. Components sum to Lambda - mu N - d A.
inline StateDerivative rhs(const ModelParams& p, const State& s) {
    const DerivedConstants dc = derived_constants(p);
    const double lambda = force_of_infection(p, s);
    StateDerivative d;
    d.dS = p.Lambda - lambda * s.S - p.mu * s.S;
    d.dI = lambda * s.S - dc.C1 * s.I + p.alpha * s.A + p.omega * s.C;
    d.dC = p.phi * s.I - dc.C3 * s.C;
    d.dA = p.rho * s.I - dc.C2 * s.A;
    return d;
}

enum class EquilibriumKind { DiseaseFree, Endemic };

struct Equilibrium {
    EquilibriumKind kind;
    State state;
    double lambda_star;  // force of infection at the equilibrium
};

// Disease-free equilibrium (Lambda/mu, 0, 0, 0).
inline Equilibrium dfe(const ModelParams& p) {
    return {EquilibriumKind::DiseaseFree, {p.Lambda / p.mu, 0.0, 0.0, 0.0}, 0.0};
}

// Unique endemic equilibrium, which exists iff R0 > 1. Computed from the
// closed forms in Lambda, the derived constants, and rho d C3, then
// cross-checked against S* = Lambda / (lambda* + mu); a disagreement beyond
// 1e-10 relative means the closed forms were evaluated outside their
// regime and raises NumericalFailure.
inline Equilibrium endemic_equilibrium(const ModelParams& p) {
    const DerivedConstants dc = derived_constants(p);
    const double r0 = dc.r0();
    if (!(r0 > 1.0))
        throw NoEndemicEquilibrium("endemic equilibrium requires R0 > 1, got R0 = " +
                                   std::to_string(r0));
    const double lambda_star =
        dc.D_script * (r0 - 1.0) / (dc.C2 * dc.C3 + p.phi * dc.C2 + p.rho * dc.C3);
    const double rdc3 = p.rho * p.d * dc.C3;
    const double gap = dc.D_script - dc.N_script;       // negative when R0 > 1
    const double denom = dc.D_script * (rdc3 - dc.N_script);
    State st;
    st.S = p.Lambda * (dc.D_script - rdc3) / (p.mu * (dc.N_script - rdc3));
    st.I = p.Lambda * dc.C2 * dc.C3 * gap / denom;
    st.C = p.Lambda * dc.C2 * p.phi * gap / denom;
    st.A = p.Lambda * p.rho * dc.C3 * gap / denom;
    const double s_check = p.Lambda / (lambda_star + p.mu);
    if (!(std::abs(st.S - s_check) <= 1e-10 * std::abs(s_check)))
        throw NumericalFailure("endemic closed forms disagree with Lambda/(lambda*+mu)");
    return {EquilibriumKind::Endemic, st, lambda_star};
}

} // namespace sica
