#include "rislab/checkers.hpp"
#include "rislab/config.hpp"
#include "rislab/construction.hpp"
#include "rislab/experiments.hpp"
#include "rislab/path_io.hpp"
#include "rislab/viscous_solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace rislab;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kRuntime = 3;

std::string out_path(const RunConfig& c, const std::string& name) {
    if (c.out_dir.empty()) {
        return {};
    }
    std::filesystem::create_directories(c.out_dir);
    return (std::filesystem::path(c.out_dir) / name).string();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

int run_solve(const RunConfig& c) {
    const RISProblem problem = build_problem(c);
    const double step = c.step.value_or(default_step_rule(c.epsilon));
    const auto traj = solve_viscous(problem, c.epsilon, step);
    const auto tuple = reparametrize(traj, problem);
    nlohmann::json summary{{"epsilon", c.epsilon},
                           {"step", step},
                           {"steps", traj.rates.size()},
                           {"S", tuple.S},
                           {"final_state", std::vector<double>(traj.states.back().data(),
                                                               traj.states.back().data() + traj.states.back().size())},
                           {"normalization_residual", normalization_residual(tuple, problem)},
                           {"energy_residual", energy_residual(tuple, problem, 0.0, tuple.S)}};
    std::cout << summary.dump(2) << '\n';
    if (!c.out_dir.empty()) {
        write_path_csv(traj.as_path(), out_path(c, "trajectory.csv"));
        write_tuple_csv(tuple, out_path(c, "viscous"));
        write_text(out_path(c, "summary.json"), summary.dump(2) + "\n");
        if (c.svg) {
            write_tuple_svg(tuple, out_path(c, "viscous.svg"), "viscous tuple");
        }
    }
    return kPass;
}

int run_check(const RunConfig& c) {
    const RISProblem problem = build_problem(c);
    const SolutionConcept concept_kind = parse_concept(c.solution_concept);
    CheckReport report;
    if (concept_kind == SolutionConcept::Local || concept_kind == SolutionConcept::Differential) {
        if (!c.solution) {
            throw ConfigError("--solution is required for the " + c.solution_concept + " concept");
        }
        const PiecewisePath z = read_path_csv(*c.solution);
        if (concept_kind == SolutionConcept::Local) {
            report = check_local(z, problem, c.tol);
        } else {
            try {
                report = check_differential(z, problem, c.tol);
            } catch (const PreconditionError& e) {
                std::cout << "differential check rejected the input: " << e.what() << '\n';
                return kFail;
            }
        }
    } else {
        std::optional<ParametrizedTuple> tuple;
        if (c.tuple) {
            tuple = read_tuple_csv(*c.tuple);
        } else if (c.problem_name == "remark44" && !c.problem_json) {
            tuple = remark44_tuple().tuple;
        } else {
            throw ConfigError("--tuple is required for the " + c.solution_concept + " concept");
        }
        report = concept_kind == SolutionConcept::Relaxed ? check_relaxed(*tuple, problem, c.tol)
                                                          : check_normalized_pbv(*tuple, problem, c.tol);
    }
    std::cout << report.to_table();
    write_text(out_path(c, "report.json"), report.to_json() + "\n");
    return report.overall() ? kPass : kFail;
}

int run_construct(const RunConfig& c) {
    if (!c.solution) {
        throw ConfigError("--solution is required for construct");
    }
    const RISProblem problem = build_problem(c);
    const PiecewisePath z = read_path_csv(*c.solution);
    try {
        const auto result = construct_relaxed_from_local(z, problem, c.tol);
        std::cout << "S = " << result.tuple.S << ", jumps = " << result.decomposition.jumps.size()
                  << ", projection error = " << result.worst_projection_error() << '\n';
        std::cout << result.relaxed_report.to_table();
        if (!c.out_dir.empty()) {
            write_tuple_csv(result.tuple, out_path(c, "constructed"));
            write_text(out_path(c, "report.json"), result.relaxed_report.to_json() + "\n");
        }
        return kPass;
    } catch (const PreconditionError& e) {
        std::cout << "construction rejected: " << e.what() << '\n';
        return kFail;
    }
}

bool ce1_expected(const StabilityReport& r, bool assess_loads) {
    bool ok = r.load_mode_matches || !assess_loads;
    for (const auto& row : r.rows) {
        if (row.n != "limit" && (row.solution_concept == "normalized_pbv" || row.solution_concept == "relaxed")) {
            ok = ok && row.passed;
        }
    }
    const auto* pbv = r.find("limit", "normalized_pbv");
    const auto* rel = r.find("limit", "relaxed");
    return ok && pbv && !pbv->passed && rel && rel->passed;
}

bool ce2_expected(const StabilityReport& r, bool assess_loads) {
    bool ok = r.load_mode_matches || !assess_loads;
    for (const auto& row : r.rows) {
        if (row.n != "limit") {
            ok = ok && row.passed;
        }
    }
    const auto* local = r.find("limit", "local");
    const auto* rel = r.find("limit", "relaxed");
    return ok && local && !local->passed && rel && rel->passed;
}

int run_counterexample(const RunConfig& c, int which) {
    const auto setup = which == 1 ? counterexample1_setup() : counterexample2_setup();
    const std::vector<int> ns = c.n ? std::vector<int>{*c.n} : kDefaultNs;
    const auto report = stability_experiment(setup, ns, c.tol);
    std::cout << "n        concept          verdict  worst residual  witness\n";
    for (const auto& row : report.rows) {
        std::printf("%-8s %-16s %-8s %-15.6g %s\n", row.n.c_str(), row.solution_concept.c_str(),
                    row.passed ? "PASS" : "FAIL", row.worst_residual, row.witness.c_str());
    }
    const bool assess_loads = ns.size() > 1;
    if (assess_loads) {
        std::cout << "load convergence: " << to_string(report.load_diagnostics.mode()) << " (declared "
                  << to_string(setup.loads.declared) << ")\n";
    } else {
        std::cout << "load convergence: not assessed for a single n\n";
    }
    const std::string name = "counterexample" + std::to_string(which);
    if (!c.out_dir.empty()) {
        write_stability_csv(report, out_path(c, name + "_table.csv"));
        const auto tuple = setup.tuples.generator(ns.back());
        write_tuple_csv(tuple, out_path(c, name + "_n" + std::to_string(ns.back())));
        write_tuple_csv(setup.tuples.limit, out_path(c, name + "_limit"));
        if (c.svg) {
            write_tuple_svg(tuple, out_path(c, name + "_n" + std::to_string(ns.back()) + ".svg"),
                            name + ", n = " + std::to_string(ns.back()));
            write_tuple_svg(setup.tuples.limit, out_path(c, name + "_limit.svg"), name + ", limit");
        }
    }
    const bool expected = which == 1 ? ce1_expected(report, assess_loads) : ce2_expected(report, assess_loads);
    std::cout << (expected ? "verdicts match the expected pattern\n" : "verdicts differ from the expected pattern\n");
    return expected ? kPass : kFail;
}

int run_sweep(const RunConfig& c) {
    const int which = c.problem_name == "ce1" ? 1 : 2;
    const int n = c.n.value_or(4);
    std::vector<double> eps = c.epsilons;
    if (eps.empty()) {
        eps = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    }
    StepRule rule = default_step_rule;
    if (c.step) {
        const double ratio = *c.step / c.epsilon;
        rule = [ratio](double e) { return ratio * e; };
    }
    const auto report = viscous_crosscheck(which, n, eps, rule);
    std::cout << "epsilon      step         S            sup_err_z    normalization  energy\n";
    for (const auto& r : report.rows) {
        std::printf("%-12.4g %-12.4g %-12.6f %-12.4g %-14.4g %.4g\n", r.epsilon, r.step, r.S, r.sup_err_z,
                    r.normalization_residual, r.energy_residual);
    }
    std::cout << "error monotone under refinement: " << (report.monotone ? "yes" : "no") << '\n';
    if (!c.out_dir.empty()) {
        write_sweep_csv(report.rows, out_path(c, "sweep.csv"));
    }
    return kPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate-independent systems with BV loads: viscous solver, solution checkers and counterexamples"};
    std::string command;
    std::string config_path;
    std::string out_dir;
    double tol = 0.0;
    int n = 0;
    double epsilon = 0.0;
    double step = 0.0;
    std::vector<double> epsilons;
    std::string concept_name;
    std::string problem;
    std::string load;
    std::string solution;
    std::string tuple;
    bool svg = false;

    app.add_option("command", command, "solve | check | construct | counterexample1 | counterexample2 | sweep");
    app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--tol", tol, "checker tolerance");
    app.add_option("--n", n, "index of the load sequence");
    app.add_option("--epsilon", epsilon, "viscosity");
    app.add_option("--step", step, "time step");
    app.add_option("--epsilons", epsilons, "viscosities for sweep (decreasing)");
    app.add_option("--concept", concept_name, "differential | local | pbv | relaxed")
        ->check(CLI::IsMember({"differential", "local", "pbv", "normalized_pbv", "relaxed"}));
    app.add_option("--problem", problem, "built-in problem")->check(CLI::IsMember({"ce1", "ce2", "remark44"}));
    app.add_option("--load", load, "zero | ce1:N | ce2:N | ce1-limit | path to CSV");
    app.add_option("--solution", solution, "physical-time path CSV");
    app.add_option("--tuple", tuple, "prefix of <prefix>_{t_hat,z_hat,ell_hat}.csv");
    app.add_flag("--svg", svg, "also write SVG profiles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        RunConfig c = config_path.empty() ? RunConfig{} : parse_config_file(config_path);
        if (!command.empty()) {
            c.command = parse_command(command);
        }
        if (!c.command) {
            throw ConfigError("no command given");
        }
        if (!out_dir.empty()) {
            c.out_dir = out_dir;
        }
        if (app.count("--tol")) {
            c.tol = tol;
        }
        if (app.count("--n")) {
            c.n = n;
        }
        if (app.count("--epsilon")) {
            c.epsilon = epsilon;
        }
        if (app.count("--step")) {
            c.step = step;
        }
        if (app.count("--epsilons")) {
            c.epsilons = epsilons;
        }
        if (!concept_name.empty()) {
            c.solution_concept = concept_name;
        }
        if (!problem.empty()) {
            c.problem_name = problem;
            c.problem_json.reset();
        }
        if (!load.empty()) {
            c.load = load;
        }
        if (!solution.empty()) {
            c.solution = solution;
        }
        if (!tuple.empty()) {
            c.tuple = tuple;
        }
        c.svg = c.svg || svg;
        c.validate();

        switch (*c.command) {
        case Command::Solve:
            return run_solve(c);
        case Command::Check:
            return run_check(c);
        case Command::Construct:
            return run_construct(c);
        case Command::Counterexample1:
            return run_counterexample(c, 1);
        case Command::Counterexample2:
            return run_counterexample(c, 2);
        case Command::Sweep:
            return run_sweep(c);
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}
