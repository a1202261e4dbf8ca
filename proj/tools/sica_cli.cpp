// Command-line front end: simulation, equilibrium and stability analysis,
// Lyapunov certification, scheme comparison, and case-study fit, each
// emitting CSV or JSON. Exit codes: 0 success, 1 numerical failure,
// 2 usage or configuration error.

#include <array>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sica/sica.hpp"

namespace {

struct Options {
    std::string preset;
    std::string params_path;
    std::string init = "1";
    double h = 1.0;
    std::size_t steps = 27;
    std::string denominator = "mickens";
    double beta_override = 0.0;
    bool beta_set = false;
    std::string out;
    std::string format = "csv";
    std::string kind;
    double tol = 1e-8;
};

void add_params_flags(CLI::App* cmd, Options& opt) {
    // --h is the step-size flag, so help stays on --help alone.
    cmd->set_help_flag("--help", "Print this help message and exit");
    auto* preset = cmd->add_option("--preset", opt.preset, "Built-in parameter set (cape-verde)");
    auto* params = cmd->add_option("--params", opt.params_path, "Path to a JSON parameter document");
    preset->excludes(params);
    params->excludes(preset);
    cmd->add_option("--beta", opt.beta_override, "Override the transmission coefficient");
    cmd->add_option("--out", opt.out, "Output path (default: standard output)");
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

void add_run_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--init", opt.init, "Initial condition: preset 1..4 or S,I,C,A");
    cmd->add_option("--h", opt.h, "Step size in years")->check(CLI::PositiveNumber);
    cmd->add_option("--denominator", opt.denominator, "Denominator function of the scheme")
        ->check(CLI::IsMember({"mickens", "identity"}));
}

sica::DenominatorKind denominator_kind(const Options& opt) {
    return opt.denominator == "identity" ? sica::DenominatorKind::Identity
                                         : sica::DenominatorKind::MickensExponential;
}

sica::ModelParams load_params(const Options& opt) {
    sica::ModelParams p;
    if (!opt.params_path.empty()) {
        std::ifstream in(opt.params_path);
        if (!in)
            throw sica::InvalidParams("cannot open parameter file " + opt.params_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::parse_error& e) {
            throw sica::InvalidParams(std::string("parameter file is not valid JSON: ") + e.what());
        }
        p = sica::params_from_json(j);
    } else {
        const std::string name = opt.preset.empty() ? "cape-verde" : opt.preset;
        if (name != "cape-verde")
            throw sica::InvalidParams("unknown preset " + name);
        p = sica::cape_verde_params();
    }
    if (opt.beta_set) p.beta = opt.beta_override;
    p.validate();
    for (const std::string& w : p.assumption_warnings()) std::cerr << "warning: " << w << '\n';
    return p;
}

sica::State parse_init(const Options& opt) {
    const std::string& text = opt.init;
    if (text.size() == 1 && text[0] >= '1' && text[0] <= '4')
        return sica::cape_verde_initial(text[0] - '0');
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 4)
        throw sica::InvalidParams("--init must be a preset 1..4 or four comma-separated numbers");
    std::array<double, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) {
        std::size_t used = 0;
        try {
            v[i] = std::stod(parts[i], &used);
        } catch (const std::exception&) {
            throw sica::InvalidParams("--init component is not a number: " + parts[i]);
        }
        if (used != parts[i].size())
            throw sica::InvalidParams("--init component is not a number: " + parts[i]);
        if (v[i] < 0.0)
            throw sica::InvalidParams("--init components must be nonnegative");
    }
    const sica::State s{v[0], v[1], v[2], v[3]};
    if (!(s.N() > 0.0))
        throw sica::InvalidParams("--init must describe a positive total population");
    return s;
}

int with_output(const Options& opt, const std::function<void(std::ostream&)>& write) {
    if (opt.out.empty()) {
        write(std::cout);
        std::cout.flush();
        return 0;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out)
        throw sica::InvalidParams("cannot open output path " + opt.out);
    write(out);
    out.flush();
    if (!out)
        throw sica::NumericalFailure("failed while writing " + opt.out);
    return 0;
}

void write_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

int run_simulate(const Options& opt) {
    const sica::ModelParams p = load_params(opt);
    const sica::Trajectory traj =
        sica::simulate(p, parse_init(opt), opt.h, opt.steps, denominator_kind(opt));
    return with_output(opt, [&](std::ostream& os) {
        if (opt.format == "json") write_json(os, sica::trajectory_json(traj));
        else sica::write_trajectory_csv(os, traj);
    });
}

int run_equilibria(const Options& opt) {
    const sica::ModelParams p = load_params(opt);
    const sica::DerivedConstants dc = sica::derived_constants(p);
    double worst = sica::equilibrium_residual(p, sica::dfe(p).state);
    if (dc.r0() > 1.0)
        worst = std::max(worst,
                         sica::equilibrium_residual(p, sica::endemic_equilibrium(p).state));
    else
        std::cerr << "note: no endemic equilibrium: R0 = " << dc.r0() << " <= 1\n";
    if (!(worst <= opt.tol))
        throw sica::NumericalFailure("equilibrium residual " + std::to_string(worst) +
                                     " exceeds tolerance " + std::to_string(opt.tol));
    return with_output(opt, [&](std::ostream& os) {
        if (opt.format == "json") write_json(os, sica::equilibria_json(p));
        else sica::write_equilibria_csv(os, p);
    });
}

int run_stability(const Options& opt) {
    const sica::StabilityReport rep = sica::dfe_local_stability(load_params(opt));
    return with_output(opt, [&](std::ostream& os) {
        if (opt.format == "json") write_json(os, sica::stability_report_json(rep));
        else sica::write_stability_csv(os, rep);
    });
}

int run_lyapunov(const Options& opt) {
    const sica::ModelParams p = load_params(opt);
    const sica::Trajectory traj =
        sica::simulate(p, parse_init(opt), opt.h, opt.steps, denominator_kind(opt));
    const sica::LyapunovSeries series =
        opt.kind == "ee" ? sica::lyapunov_ee(traj) : sica::lyapunov_dfe(traj);
    return with_output(opt, [&](std::ostream& os) {
        if (opt.format == "json") write_json(os, sica::lyapunov_json(series));
        else sica::write_lyapunov_csv(os, series);
    });
}

std::vector<sica::State> partial_reference(sica::ReferenceKind kind, const sica::ModelParams& p,
                                           const sica::State& s0, double h, std::size_t steps) {
    std::vector<sica::State> states{s0};
    try {
        for (std::size_t i = 0; i < steps; ++i)
            states.push_back(sica::reference_step(kind, p, states.back(), h));
    } catch (const sica::ZeroPopulation&) {
        // The integrator left the domain; the truncated run is the result.
    }
    return states;
}

int run_compare(const Options& opt) {
    const sica::ModelParams p = load_params(opt);
    const sica::State s0 = parse_init(opt);
    const sica::Trajectory traj = sica::simulate(p, s0, opt.h, opt.steps, denominator_kind(opt));
    const auto euler =
        partial_reference(sica::ReferenceKind::ExplicitEuler, p, s0, opt.h, opt.steps);
    const auto rk4 = partial_reference(sica::ReferenceKind::RK4, p, s0, opt.h, opt.steps);
    return with_output(opt, [&](std::ostream& os) {
        if (opt.format == "json") write_json(os, sica::compare_json(traj, euler, rk4));
        else sica::write_compare_csv(os, traj, euler, rk4);
    });
}

int run_fit(const Options& opt) {
    const sica::ModelParams p = load_params(opt);
    const auto steps_per_year = static_cast<std::size_t>(std::llround(1.0 / opt.h));
    if (steps_per_year == 0 ||
        std::abs(static_cast<double>(steps_per_year) * opt.h - 1.0) > 1e-9)
        throw sica::InvalidParams("fit needs a step size dividing one year, got h = " +
                                  std::to_string(opt.h));
    const std::size_t n_years =
        static_cast<std::size_t>(sica::load_cape_verde().size()) - 1;
    const sica::Trajectory traj = sica::simulate(p, parse_init(opt), opt.h,
                                                 n_years * steps_per_year, denominator_kind(opt));
    const sica::FitReport rep = sica::fit_metrics(sica::cumulative_cases(traj, n_years));
    return with_output(opt, [&](std::ostream& os) {
        if (opt.format == "json") write_json(os, sica::fit_report_json(rep));
        else sica::write_fit_csv(os, rep);
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time S/I/C/A epidemic model: positivity-preserving "
                 "simulation and stability analysis"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    Options sim_opt, eq_opt, st_opt, ly_opt, cmp_opt, fit_opt;

    CLI::App* sim = app.add_subcommand("simulate", "Run the scheme and write the trajectory");
    add_params_flags(sim, sim_opt);
    add_run_flags(sim, sim_opt);
    sim->add_option("--steps", sim_opt.steps, "Number of steps");

    CLI::App* eq = app.add_subcommand("equilibria", "Write the equilibria and R0");
    add_params_flags(eq, eq_opt);
    eq->add_option("--tol", eq_opt.tol, "Relative residual tolerance")
        ->check(CLI::PositiveNumber);

    CLI::App* st = app.add_subcommand("stability", "Write the local stability report");
    add_params_flags(st, st_opt);

    CLI::App* ly = app.add_subcommand("lyapunov", "Evaluate a Lyapunov functional on a run");
    add_params_flags(ly, ly_opt);
    add_run_flags(ly, ly_opt);
    ly_opt.steps = 1000;
    ly->add_option("--steps", ly_opt.steps, "Number of steps");
    ly->add_option("--kind", ly_opt.kind, "Functional: dfe or ee")
        ->required()
        ->check(CLI::IsMember({"dfe", "ee"}));

    CLI::App* cmp = app.add_subcommand("compare", "Run the scheme beside Euler and RK4");
    add_params_flags(cmp, cmp_opt);
    add_run_flags(cmp, cmp_opt);
    cmp->add_option("--steps", cmp_opt.steps, "Number of steps");

    CLI::App* fit = app.add_subcommand("fit", "Compare cumulative cases with the Cape Verde record");
    add_params_flags(fit, fit_opt);
    add_run_flags(fit, fit_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    sim_opt.beta_set = sim->count("--beta") > 0;
    eq_opt.beta_set = eq->count("--beta") > 0;
    st_opt.beta_set = st->count("--beta") > 0;
    ly_opt.beta_set = ly->count("--beta") > 0;
    cmp_opt.beta_set = cmp->count("--beta") > 0;
    fit_opt.beta_set = fit->count("--beta") > 0;

    try {
        if (sim->parsed()) return run_simulate(sim_opt);
        if (eq->parsed()) return run_equilibria(eq_opt);
        if (st->parsed()) return run_stability(st_opt);
        if (ly->parsed()) return run_lyapunov(ly_opt);
        if (cmp->parsed()) return run_compare(cmp_opt);
        if (fit->parsed()) return run_fit(fit_opt);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const sica::InvalidParams& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const sica::NonpositiveStep& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const sica::TrajectoryTooShort& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const sica::HorizonTooShort& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const sica::LengthMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const sica::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
