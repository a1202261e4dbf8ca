#pragma once

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "data.hpp"
#include "errors.hpp"
#include "lyapunov.hpp"
#include "model.hpp"
#include "nsfd.hpp"
#include "reference.hpp"
#include "stability.hpp"

namespace sica {

// Shortest exact decimal for a double; CSV output must round-trip.
inline std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline const char* to_string(DenominatorKind kind) {
    return kind == DenominatorKind::MickensExponential ? "mickens" : "identity";
}

// Largest residual component of the vector field at a state, relative to
// the population scale; an equilibrium should sit at rounding error.
inline double equilibrium_residual(const ModelParams& p, const State& s) {
    const StateDerivative d = rhs(p, s);
    const double scale = std::max(1.0, s.N());
    return std::max({std::abs(d.dS), std::abs(d.dI), std::abs(d.dC), std::abs(d.dA)}) / scale;
}

inline nlohmann::json params_to_json(const ModelParams& p) {
    return nlohmann::json{{"Lambda", p.Lambda}, {"mu", p.mu},       {"beta", p.beta},
                          {"phi", p.phi},       {"rho", p.rho},     {"alpha", p.alpha},
                          {"omega", p.omega},   {"d", p.d},         {"eta_C", p.eta_C},
                          {"eta_A", p.eta_A}};
}

// Strict parameter document: exactly the ten model keys, all numeric.
inline ModelParams params_from_json(const nlohmann::json& j) {
    static const char* const keys[] = {"Lambda", "mu",    "beta", "phi",   "rho",
                                       "alpha",  "omega", "d",    "eta_C", "eta_A"};
    if (!j.is_object())
        throw InvalidParams("parameter document must be a JSON object");
    for (const char* key : keys) {
        if (!j.contains(key))
            throw InvalidParams(std::string("parameter document is missing key ") + key);
        if (!j.at(key).is_number())
            throw InvalidParams(std::string("parameter ") + key + " must be a number");
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : keys)
            if (item.key() == key) { known = true; break; }
        if (!known)
            throw InvalidParams("unknown parameter key " + item.key());
    }
    ModelParams p;
    p.Lambda = j.at("Lambda").get<double>();
    p.mu = j.at("mu").get<double>();
    p.beta = j.at("beta").get<double>();
    p.phi = j.at("phi").get<double>();
    p.rho = j.at("rho").get<double>();
    p.alpha = j.at("alpha").get<double>();
    p.omega = j.at("omega").get<double>();
    p.d = j.at("d").get<double>();
    p.eta_C = j.at("eta_C").get<double>();
    p.eta_A = j.at("eta_A").get<double>();
    return p;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "n,t,S,I,C,A,N\n";
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const State& s = traj[n];
        os << n << ',' << format_g17(static_cast<double>(n) * traj.h) << ','
           << format_g17(s.S) << ',' << format_g17(s.I) << ',' << format_g17(s.C) << ','
           << format_g17(s.A) << ',' << format_g17(s.N()) << '\n';
    }
}

inline nlohmann::json trajectory_json(const Trajectory& traj) {
    nlohmann::json states = nlohmann::json::array();
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const State& s = traj[n];
        states.push_back({{"n", n},
                          {"t", static_cast<double>(n) * traj.h},
                          {"S", s.S},
                          {"I", s.I},
                          {"C", s.C},
                          {"A", s.A},
                          {"N", s.N()}});
    }
    return {{"h", traj.h},
            {"denominator", to_string(traj.denominator)},
            {"psi", traj.psi_value},
            {"params", params_to_json(traj.params)},
            {"states", states}};
}

inline nlohmann::json equilibrium_json(const ModelParams& p, const Equilibrium& eq) {
    return {{"S", eq.state.S},
            {"I", eq.state.I},
            {"C", eq.state.C},
            {"A", eq.state.A},
            {"lambda_star", eq.lambda_star},
            {"residual", equilibrium_residual(p, eq.state)}};
}

inline nlohmann::json equilibria_json(const ModelParams& p) {
    const DerivedConstants dc = derived_constants(p);
    nlohmann::json j;
    j["r0"] = dc.r0();
    j["dfe"] = equilibrium_json(p, dfe(p));
    if (dc.r0() > 1.0) {
        j["endemic"] = equilibrium_json(p, endemic_equilibrium(p));
    } else {
        j["endemic"] = nullptr;
        j["note"] = "no endemic equilibrium: R0 <= 1";
    }
    return j;
}

inline void write_equilibria_csv(std::ostream& os, const ModelParams& p) {
    const DerivedConstants dc = derived_constants(p);
    os << "kind,S,I,C,A,lambda_star,residual\n";
    const Equilibrium e0 = dfe(p);
    os << "dfe," << format_g17(e0.state.S) << ',' << format_g17(e0.state.I) << ','
       << format_g17(e0.state.C) << ',' << format_g17(e0.state.A) << ','
       << format_g17(e0.lambda_star) << ',' << format_g17(equilibrium_residual(p, e0.state))
       << '\n';
    if (dc.r0() > 1.0) {
        const Equilibrium ee = endemic_equilibrium(p);
        os << "endemic," << format_g17(ee.state.S) << ',' << format_g17(ee.state.I) << ','
           << format_g17(ee.state.C) << ',' << format_g17(ee.state.A) << ','
           << format_g17(ee.lambda_star) << ',' << format_g17(equilibrium_residual(p, ee.state))
           << '\n';
    }
}

inline nlohmann::json condition_json(const Condition& c) {
    return {{"holds", c.holds},
            {"lhs", c.lhs},
            {"rhs", c.rhs_defined ? nlohmann::json(c.rhs) : nlohmann::json(nullptr)}};
}

inline nlohmann::json stability_report_json(const StabilityReport& rep) {
    double min_inner = rep.schur.inner_dets.empty() ? 0.0 : rep.schur.inner_dets.front();
    for (double d : rep.schur.inner_dets) min_inner = std::min(min_inner, d);
    nlohmann::json j;
    j["r0"] = rep.r0;
    j["char_poly"] = {{"p1", rep.char_poly.p1},
                      {"p2", rep.char_poly.p2},
                      {"p3", rep.char_poly.p3},
                      {"p4", rep.char_poly.p4}};
    j["schur_p_at_1"] = {{"holds", rep.schur.cond_p1}, {"lhs", rep.schur.p_at_1}, {"rhs", 0.0}};
    j["schur_signed_p_at_minus_1"] = {{"holds", rep.schur.cond_pm1},
                                      {"lhs", rep.schur.signed_p_at_m1},
                                      {"rhs", 0.0}};
    j["schur_inners"] = {{"holds", rep.schur.cond_inners}, {"lhs", min_inner}, {"rhs", 0.0}};
    j["schur_verdict"] = to_string(rep.schur.verdict);
    j["c2_lt_1"] = condition_json(rep.c2_lt_1);
    j["c3_lt_1"] = condition_json(rep.c3_lt_1);
    j["beta_bound"] = condition_json(rep.beta_bound);
    j["p2_bound"] = condition_json(rep.p2_bound);
    j["sandwich_lower"] = condition_json(rep.sandwich_lower);
    j["sandwich_upper"] = condition_json(rep.sandwich_upper);
    j["mu_bound"] = condition_json(rep.mu_bound);
    j["lemma_beta"] = condition_json(rep.lemma_beta);
    j["verdict"] = to_string(rep.verdict);
    return j;
}

inline void write_stability_csv(std::ostream& os, const StabilityReport& rep) {
    auto row = [&os](const char* name, const Condition& c) {
        os << name << ',' << (c.holds ? "true" : "false") << ',' << format_g17(c.lhs) << ','
           << (c.rhs_defined ? format_g17(c.rhs) : std::string()) << '\n';
    };
    double min_inner = rep.schur.inner_dets.empty() ? 0.0 : rep.schur.inner_dets.front();
    for (double d : rep.schur.inner_dets) min_inner = std::min(min_inner, d);
    os << "name,holds,lhs,rhs\n";
    os << "r0,," << format_g17(rep.r0) << ",\n";
    os << "char_poly_p1,," << format_g17(rep.char_poly.p1) << ",\n";
    os << "char_poly_p2,," << format_g17(rep.char_poly.p2) << ",\n";
    os << "char_poly_p3,," << format_g17(rep.char_poly.p3) << ",\n";
    os << "char_poly_p4,," << format_g17(rep.char_poly.p4) << ",\n";
    row("schur_p_at_1", {rep.schur.cond_p1, rep.schur.p_at_1, 0.0, true});
    row("schur_signed_p_at_minus_1", {rep.schur.cond_pm1, rep.schur.signed_p_at_m1, 0.0, true});
    row("schur_inners", {rep.schur.cond_inners, min_inner, 0.0, true});
    os << "schur_verdict,,," << to_string(rep.schur.verdict) << '\n';
    row("c2_lt_1", rep.c2_lt_1);
    row("c3_lt_1", rep.c3_lt_1);
    row("beta_bound", rep.beta_bound);
    row("p2_bound", rep.p2_bound);
    row("sandwich_lower", rep.sandwich_lower);
    row("sandwich_upper", rep.sandwich_upper);
    row("mu_bound", rep.mu_bound);
    row("lemma_beta", rep.lemma_beta);
    os << "verdict,,," << to_string(rep.verdict) << '\n';
}

inline const char* to_string(LyapunovKind kind) {
    return kind == LyapunovKind::DFE_V ? "dfe" : "ee";
}

inline nlohmann::json lyapunov_json(const LyapunovSeries& series) {
    return {{"kind", to_string(series.kind)},
            {"slack", kLyapunovSlack},
            {"start_index", series.start_index},
            {"monotone", series.monotone},
            {"monotone_from", series.monotone_from},
            {"values", series.values},
            {"differences", series.differences}};
}

inline void write_lyapunov_csv(std::ostream& os, const LyapunovSeries& series) {
    os << "n,V,dV\n";
    for (std::size_t n = 0; n < series.values.size(); ++n) {
        os << n << ',' << format_g17(series.values[n]) << ',';
        if (n < series.differences.size()) os << format_g17(series.differences[n]);
        os << '\n';
    }
}

inline nlohmann::json fit_report_json(const FitReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rep.years.size(); ++i)
        rows.push_back({{"year", rep.years[i]},
                        {"model_cases", rep.model_cases[i]},
                        {"observed_cases", rep.observed_cases[i]},
                        {"residual", rep.residuals[i]}});
    return {{"rmse", rep.rmse}, {"max_abs_error", rep.max_abs_error}, {"rows", rows}};
}

inline void write_fit_csv(std::ostream& os, const FitReport& rep) {
    os << "year,model_cases,observed_cases,residual\n";
    for (std::size_t i = 0; i < rep.years.size(); ++i)
        os << rep.years[i] << ',' << format_g17(rep.model_cases[i]) << ','
           << format_g17(rep.observed_cases[i]) << ',' << format_g17(rep.residuals[i]) << '\n';
}

// Side-by-side trajectories of the positivity-preserving scheme and the two
// reference integrators. Reference runs can end early when the population
// collapses mid-step; missing rows are padded with NaN.
inline void write_compare_csv(std::ostream& os, const Trajectory& traj,
                              const std::vector<State>& euler, const std::vector<State>& rk4) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    os << "n,t,S_nsfd,I_nsfd,C_nsfd,A_nsfd,S_euler,I_euler,C_euler,A_euler,"
          "S_rk4,I_rk4,C_rk4,A_rk4\n";
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const State& s = traj[n];
        const State e = n < euler.size() ? euler[n] : State{nan, nan, nan, nan};
        const State r = n < rk4.size() ? rk4[n] : State{nan, nan, nan, nan};
        os << n << ',' << format_g17(static_cast<double>(n) * traj.h) << ','
           << format_g17(s.S) << ',' << format_g17(s.I) << ',' << format_g17(s.C) << ','
           << format_g17(s.A) << ',' << format_g17(e.S) << ',' << format_g17(e.I) << ','
           << format_g17(e.C) << ',' << format_g17(e.A) << ',' << format_g17(r.S) << ','
           << format_g17(r.I) << ',' << format_g17(r.C) << ',' << format_g17(r.A) << '\n';
    }
}

inline nlohmann::json compare_json(const Trajectory& traj, const std::vector<State>& euler,
                                   const std::vector<State>& rk4) {
    auto state_json = [](const State& s) {
        return nlohmann::json{{"S", s.S}, {"I", s.I}, {"C", s.C}, {"A", s.A}};
    };
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t n = 0; n < traj.size(); ++n) {
        nlohmann::json row{{"n", n},
                           {"t", static_cast<double>(n) * traj.h},
                           {"nsfd", state_json(traj[n])}};
        row["euler"] = n < euler.size() ? state_json(euler[n]) : nlohmann::json(nullptr);
        row["rk4"] = n < rk4.size() ? state_json(rk4[n]) : nlohmann::json(nullptr);
        rows.push_back(row);
    }
    return {{"h", traj.h}, {"rows", rows}};
}

} // namespace sica
