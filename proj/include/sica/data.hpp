#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "nsfd.hpp"

namespace sica {

// One row of the Cape Verde HIV/AIDS surveillance record: cumulative
// reported cases and total population at the end of the given year.
struct ObservedPoint {
    int year;
    double cases;
    double population;
};

// Cumulative HIV/AIDS cases and population in Cape Verde, 1987-2014.
inline const std::array<ObservedPoint, 28>& load_cape_verde() {
    static const std::array<ObservedPoint, 28> table{{
        {1987, 61, 323972},    {1988, 107, 328861},   {1989, 160, 334473},
        {1990, 211, 341256},   {1991, 244, 349326},   {1992, 303, 358473},
        {1993, 337, 368423},   {1994, 358, 378763},   {1995, 395, 389156},
        {1996, 432, 399508},   {1997, 471, 409805},   {1998, 560, 419884},
        {1999, 660, 429576},   {2000, 779, 438737},   {2001, 913, 447357},
        {2002, 1064, 455396},  {2003, 1233, 462675},  {2004, 1493, 468985},
        {2005, 1716, 474224},  {2006, 2015, 478265},  {2007, 2334, 481278},
        {2008, 2610, 483824},  {2009, 2929, 486673},  {2010, 3340, 490379},
        {2011, 3739, 495159},  {2012, 4090, 500870},  {2013, 4537, 507258},
        {2014, 4946, 513906},
    }};
    return table;
}

// Calibrated Cape Verde parameter set (time unit: years).
inline ModelParams cape_verde_params() {
    ModelParams p;
    p.Lambda = 13045.0;
    p.mu = 1.0 / 69.54;
    p.beta = 0.695;
    p.phi = 1.0;
    p.rho = 0.1;
    p.alpha = 0.33;
    p.omega = 1.0 / 11.0;
    p.d = 1.0;
    p.eta_C = 0.04;
    p.eta_A = 1.35;
    return p;
}

// Four initial conditions for the case study. Preset 1 is the 1987 record
// (S,I,C,A) = (323911, 61, 0, 0); presets 2-4 redistribute or enlarge it to
// probe convergence from distant starts.
inline State cape_verde_initial(int preset) {
    constexpr double S0 = 323911.0;
    constexpr double I0 = 61.0;
    switch (preset) {
        case 1: return {S0, I0, 0.0, 0.0};
        case 2: return {S0 / 2.0, I0 + S0 / 2.0, 1.0e4, 4.0e4};
        case 3: return {S0 / 3.0, I0, 4.0e4, S0 / 3.0};
        case 4: return {3.0 * S0 / 2.0, I0 + S0 / 4.0, 5.0e5, S0 / 5.0};
    }
    throw InvalidParams("initial-condition preset must be 1..4, got " + std::to_string(preset));
}

// Cumulative case counts sampled at whole years.
struct YearlySeries {
    std::vector<int> years;    // 0, 1, 2, ... in years since the start
    std::vector<double> cases;
};

// Cumulative incidence K along a trajectory: K(0) = I0 + C0 + A0 and each
// step adds the new infections psi lambda_n S_{n+1}, sampled whenever the
// step count completes a year. h must divide one year to within 1e-9.
// When min_years is given the trajectory must reach that year.
inline YearlySeries cumulative_cases(const Trajectory& traj, std::size_t min_years = 0) {
    const auto steps_per_year = static_cast<std::size_t>(std::llround(1.0 / traj.h));
    if (steps_per_year == 0 ||
        std::abs(static_cast<double>(steps_per_year) * traj.h - 1.0) > 1e-9)
        throw InvalidParams("cumulative cases need a step size dividing one year, got h = " +
                            std::to_string(traj.h));
    if (traj.size() < 1 + min_years * steps_per_year)
        throw HorizonTooShort("trajectory covers " +
                              std::to_string((traj.size() - 1) / steps_per_year) +
                              " years, need " + std::to_string(min_years));
    YearlySeries series;
    double k = traj[0].I + traj[0].C + traj[0].A;
    series.years.push_back(0);
    series.cases.push_back(k);
    for (std::size_t n = 0; n + 1 < traj.size(); ++n) {
        const double lambda_n = force_of_infection(traj.params, traj[n]);
        k += traj.psi_value * lambda_n * traj[n + 1].S;
        if ((n + 1) % steps_per_year == 0) {
            series.years.push_back(static_cast<int>((n + 1) / steps_per_year));
            series.cases.push_back(k);
        }
    }
    return series;
}

// Model-versus-observation alignment for the case study.
struct FitReport {
    std::vector<int> years;            // calendar years
    std::vector<double> model_cases;
    std::vector<double> observed_cases;
    std::vector<double> residuals;     // model - observed
    double rmse;
    double max_abs_error;
};

// Aligns a simulated yearly series starting at start_year against the
// Cape Verde record. The series must cover every observed year.
inline FitReport fit_metrics(const YearlySeries& model, int start_year = 1987) {
    const auto& observed = load_cape_verde();
    FitReport rep;
    rep.rmse = 0.0;
    rep.max_abs_error = 0.0;
    for (const ObservedPoint& obs : observed) {
        const int offset = obs.year - start_year;
        if (offset < 0 || static_cast<std::size_t>(offset) >= model.years.size() ||
            model.years[static_cast<std::size_t>(offset)] != offset)
            throw LengthMismatch("model series does not cover observed year " +
                                 std::to_string(obs.year));
        const double m = model.cases[static_cast<std::size_t>(offset)];
        const double r = m - obs.cases;
        rep.years.push_back(obs.year);
        rep.model_cases.push_back(m);
        rep.observed_cases.push_back(obs.cases);
        rep.residuals.push_back(r);
        rep.rmse += r * r;
        rep.max_abs_error = std::max(rep.max_abs_error, std::abs(r));
    }
    rep.rmse = std::sqrt(rep.rmse / static_cast<double>(rep.residuals.size()));
    return rep;
}

} // namespace sica
