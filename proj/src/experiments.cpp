#include "rislab/experiments.hpp"

#include "rislab/viscous_solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

namespace rislab {
namespace {

// Right end of the ramp in the parameter s, 3/2 + 1/n.
double ramp_end_s(int n) { return 1.5 + 1.0 / n; }

void require_n(int n) {
    if (n < 1) {
        throw PreconditionError("n must be at least 1");
    }
}

LipschitzPath ramp_time(int n) {
    PathBuilder b;
    b.point(0.0, 0.0).point(1.0, 1.0);
    if (ramp_end_s(n) < 2.5) {
        b.point(ramp_end_s(n), 1.0 + 1.0 / n);
    }
    b.point(2.5, 2.0);
    return LipschitzPath(b.build());
}

LipschitzPath ramp_state_hat(int n) {
    PathBuilder b;
    b.point(0.0, 0.0).point(1.0, 0.0);
    if (ramp_end_s(n) < 2.5) {
        b.point(ramp_end_s(n), 0.5);
    }
    b.point(2.5, 0.5);
    return LipschitzPath(b.build());
}

LipschitzPath flat_time() { return LipschitzPath(PathBuilder().point(0.0, 0.0).point(1.0, 1.0).point(1.5, 1.0).point(2.5, 2.0).build()); }

LipschitzPath flat_state() { return LipschitzPath(PathBuilder().point(0.0, 0.0).point(1.0, 0.0).point(1.5, 0.5).point(2.5, 0.5).build()); }

std::string describe_witness(const CheckReport& r) {
    for (const auto& c : r.conditions) {
        if (!c.passed && c.witness) {
            std::ostringstream os;
            os << c.id << " on [" << c.witness->lo << ", " << c.witness->hi << "]";
            return os.str();
        }
    }
    return "";
}

StabilityRow row_from(const std::string& n, const CheckReport& r) {
    return StabilityRow{n, to_string(r.solution_concept), r.overall(), r.worst_residual(), describe_witness(r)};
}

std::vector<double> uniform_grid(double a, double b, int pieces) {
    std::vector<double> g;
    for (int i = 0; i <= pieces; ++i) {
        g.push_back(a + (b - a) * i / pieces);
    }
    return g;
}

void append_physical_rows(std::vector<StabilityRow>& rows, const std::string& label, const PiecewisePath& z,
                          const RISProblem& problem, double tol) {
    rows.push_back(row_from(label, check_local(z, problem, tol)));
    try {
        rows.push_back(row_from(label, check_differential(z, problem, tol)));
    } catch (const PreconditionError& e) {
        double jump = 0.0;
        for (double t : z.jump_times()) {
            const auto k = *z.breakpoint_index(t);
            const auto& node = z.nodes()[k];
            jump = std::max({jump, (node.value - node.left).norm(), (node.right - node.value).norm()});
        }
        rows.push_back(StabilityRow{label, to_string(SolutionConcept::Differential), false, jump, e.what()});
    }
}

} // namespace

RISProblem scalar_benchmark_problem(PiecewisePath load) {
    EnergyModel energy(Mat::Identity(1, 1), Nonlinearity::linear(scalar_vec(-1.0)));
    return RISProblem(std::move(energy), Dissipation::scaled_norm(1, 1.0), std::move(load), scalar_vec(0.0),
                      scalar_vec(0.0), 2.0);
}

PiecewisePath ce1_load(int n) {
    require_n(n);
    PathBuilder b;
    b.point(0.0, 0.0).point(1.0, 0.0);
    if (1.0 + 1.0 / n < 2.0) {
        b.point(1.0 + 1.0 / n, 0.5);
    }
    return b.point(2.0, 0.5).build();
}

PiecewisePath ce1_limit_load() { return PathBuilder().point(0.0, 0.0).jump(1.0, 0.0, 0.0, 0.5).point(2.0, 0.5).build(); }

PiecewisePath ce2_load(int n) {
    require_n(n);
    PathBuilder b;
    b.point(0.0, 0.0).point(1.0, 0.0).jump(1.0 + 1.0 / n, 0.5, 0.0, 0.0);
    if (1.0 + 1.0 / n < 2.0) {
        b.point(2.0, 0.0);
    }
    return b.build();
}

PiecewisePath ramp_state(int n) {
    require_n(n);
    PathBuilder b;
    b.point(0.0, 0.0).point(1.0, 0.0);
    if (1.0 + 1.0 / n < 2.0) {
        b.point(1.0 + 1.0 / n, 0.5);
    }
    return b.point(2.0, 0.5).build();
}

PiecewisePath step_state(double value_at_one) {
    return PathBuilder().point(0.0, 0.0).jump(1.0, 0.0, value_at_one, 0.5).point(2.0, 0.5).build();
}

Counterexample1 counterexample1(int n) {
    require_n(n);
    ParametrizedTuple tuple(2.5, ramp_time(n), ramp_state_hat(n), ramp_state_hat(n).path());
    return Counterexample1{scalar_benchmark_problem(ce1_load(n)), std::move(tuple)};
}

Counterexample1Limit counterexample1_limit() {
    ParametrizedTuple tuple(2.5, flat_time(), flat_state(), flat_state().path());
    return Counterexample1Limit{ce1_limit_load(), std::move(tuple)};
}

Counterexample2 counterexample2(int n) {
    require_n(n);
    PathBuilder lb;
    lb.point(0.0, 0.0).point(1.0, 0.0).jump(ramp_end_s(n), 0.5, 0.0, 0.0);
    if (ramp_end_s(n) < 2.5) {
        lb.point(2.5, 0.0);
    }
    ParametrizedTuple tuple(2.5, ramp_time(n), ramp_state_hat(n), lb.build());
    return Counterexample2{scalar_benchmark_problem(ce2_load(n)), std::move(tuple), ramp_state(n)};
}

Counterexample2Limit counterexample2_limit() {
    PiecewisePath ell_hat = PathBuilder().point(0.0, 0.0).point(1.0, 0.0).jump(1.5, 0.5, 0.0, 0.0).point(2.5, 0.0).build();
    ParametrizedTuple tuple(2.5, flat_time(), flat_state(), std::move(ell_hat));
    return Counterexample2Limit{PiecewisePath::constant(0.0, 2.0, scalar_vec(0.0)), std::move(tuple), step_state(0.0)};
}

Remark44 remark44_tuple() {
    Vec w(2);
    w << 0.5, 1.0;
    Vec zero = Vec::Zero(2);
    Vec end(2);
    end << 1.0, 0.5;
    Vec shift(2);
    shift << 0.8, 0.4;
    EnergyModel energy(Mat::Identity(2, 2), Nonlinearity::zero(2));
    PiecewisePath load = PathBuilder().jump(0.0, zero, zero, end).point(1.0, end).build();
    RISProblem problem(std::move(energy), Dissipation::weighted_l1(w), std::move(load), zero, zero, 1.0);

    LipschitzPath t_hat(PathBuilder().point(0.0, 0.0).point(1.0, 0.0).point(2.0, 1.0).build());
    LipschitzPath z_hat(PathBuilder().point(0.0, zero).point(1.0, end).point(2.0, end).build());
    PiecewisePath ell_hat = PathBuilder().point(0.0, shift).jump(1.0, end + shift, end, end).point(2.0, end).build();
    return Remark44{std::move(problem), ParametrizedTuple(2.0, std::move(t_hat), std::move(z_hat), std::move(ell_hat))};
}

CounterexampleSetup counterexample1_setup() {
    auto lim = counterexample1_limit();
    LoadFamily loads{"counterexample1", ce1_load, lim.load, ConvergenceMode::Intermediate};
    ExactTupleFamily tuples{[](int n) { return counterexample1(n).tuple; }, lim.tuple, ramp_state, step_state(0.0)};
    return CounterexampleSetup{scalar_benchmark_problem(ce1_limit_load()), std::move(loads), std::move(tuples)};
}

CounterexampleSetup counterexample2_setup() {
    auto lim = counterexample2_limit();
    LoadFamily loads{"counterexample2", ce2_load, lim.load, ConvergenceMode::WeakStarOnly};
    ExactTupleFamily tuples{[](int n) { return counterexample2(n).tuple; }, lim.tuple, ramp_state, lim.z_tilde};
    return CounterexampleSetup{scalar_benchmark_problem(lim.load), std::move(loads), std::move(tuples)};
}

CounterexampleSetup stationary_setup() {
    const PiecewisePath zero = PiecewisePath::constant(0.0, 2.0, scalar_vec(0.0));
    auto tuple = [] {
        LipschitzPath t_hat(PiecewisePath::scalar({0.0, 2.0}, {0.0, 2.0}));
        LipschitzPath z_hat(PiecewisePath::constant(0.0, 2.0, scalar_vec(0.0)));
        return ParametrizedTuple(2.0, std::move(t_hat), std::move(z_hat), PiecewisePath::constant(0.0, 2.0, scalar_vec(0.0)));
    };
    LoadFamily loads{"stationary", [zero](int) { return zero; }, zero, ConvergenceMode::Intermediate};
    ExactTupleFamily tuples{[tuple](int) { return tuple(); }, tuple(), [zero](int) { return zero; }, zero};
    return CounterexampleSetup{scalar_benchmark_problem(zero), std::move(loads), std::move(tuples)};
}

const StabilityRow* StabilityReport::find(const std::string& n, const std::string& solution_concept) const {
    for (const auto& r : rows) {
        if (r.n == n && r.solution_concept == solution_concept) {
            return &r;
        }
    }
    return nullptr;
}

StabilityReport stability_experiment(const CounterexampleSetup& setup, const std::vector<int>& ns, double tol) {
    if (ns.empty()) {
        throw PreconditionError("stability experiment needs at least one n");
    }
    StabilityReport report;
    std::vector<PiecewisePath> loads;
    std::vector<PiecewisePath> ell_hats;
    std::vector<PiecewisePath> t_hats;
    std::vector<PiecewisePath> z_hats;
    for (int n : ns) {
        const std::string label = std::to_string(n);
        const PiecewisePath load = setup.loads.generator(n);
        const RISProblem problem = setup.base.with_load(load);
        const ParametrizedTuple tuple = setup.tuples.generator(n);
        report.rows.push_back(row_from(label, check_normalized_pbv(tuple, problem, tol)));
        report.rows.push_back(row_from(label, check_relaxed(tuple, problem, tol)));
        if (setup.tuples.physical) {
            append_physical_rows(report.rows, label, setup.tuples.physical(n), problem, tol);
        }
        loads.push_back(load);
        ell_hats.push_back(tuple.ell_hat);
        t_hats.push_back(tuple.t_hat.path());
        z_hats.push_back(tuple.z_hat.path());
    }

    const RISProblem limit_problem = setup.base.with_load(setup.loads.limit);
    const auto& lim = setup.tuples.limit;
    report.rows.push_back(row_from("limit", check_normalized_pbv(lim, limit_problem, tol)));
    report.rows.push_back(row_from("limit", check_relaxed(lim, limit_problem, tol)));
    if (setup.tuples.limit_physical) {
        append_physical_rows(report.rows, "limit", *setup.tuples.limit_physical, limit_problem, tol);
    }

    const auto t_grid = uniform_grid(0.0, setup.base.T, 16);
    const auto s_grid = uniform_grid(0.0, lim.S, 20);
    report.load_diagnostics = convergence_diagnostics(loads, setup.loads.limit, t_grid);
    report.load_mode_matches = report.load_diagnostics.mode() == setup.loads.declared;
    auto same_domain = [&](const std::vector<PiecewisePath>& seq) {
        return std::all_of(seq.begin(), seq.end(), [&](const auto& f) { return f.b() == lim.S; });
    };
    if (same_domain(ell_hats)) {
        report.ell_hat_diagnostics = convergence_diagnostics(ell_hats, lim.ell_hat, s_grid);
        report.t_hat_diagnostics = convergence_diagnostics(t_hats, lim.t_hat.path(), s_grid);
        report.z_hat_diagnostics = convergence_diagnostics(z_hats, lim.z_hat.path(), s_grid);
    }
    return report;
}

CrosscheckReport viscous_crosscheck(const RISProblem& problem, const ParametrizedTuple& exact, int n,
                                    const std::vector<double>& epsilons, const StepRule& step_rule) {
    if (epsilons.empty()) {
        throw PreconditionError("crosscheck needs at least one epsilon");
    }
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0) || (i > 0 && !(epsilons[i] < epsilons[i - 1]))) {
            throw PreconditionError("epsilons must be positive and decreasing");
        }
    }
    std::vector<std::future<SweepRow>> jobs;
    for (double eps : epsilons) {
        jobs.push_back(std::async(std::launch::async, [&problem, &exact, &step_rule, eps, n] {
            const double h = step_rule(eps);
            const auto traj = solve_viscous(problem, eps, h);
            const auto tuple = reparametrize(traj, problem);
            const auto d = tuple_distance(tuple, exact);
            SweepRow row;
            row.epsilon = eps;
            row.step = h;
            row.n = n;
            row.S = tuple.S;
            row.sup_err_z = d.sup_z;
            row.sup_err_t = d.sup_t;
            row.normalization_residual = normalization_residual(tuple, problem);
            row.energy_residual = energy_residual(tuple, problem, 0.0, tuple.S);
            return row;
        }));
    }
    CrosscheckReport report;
    for (auto& j : jobs) {
        report.rows.push_back(j.get());
    }
    report.monotone = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const auto& prev = report.rows[i - 1];
        const auto& cur = report.rows[i];
        const double prev_err = std::max(prev.sup_err_z, prev.sup_err_t);
        const double cur_err = std::max(cur.sup_err_z, cur.sup_err_t);
        report.monotone = report.monotone && cur_err <= 1.1 * prev_err + 1e-12;
    }
    return report;
}

CrosscheckReport viscous_crosscheck(int which, int n, const std::vector<double>& epsilons, const StepRule& step_rule) {
    if (which == 1) {
        const auto ce = counterexample1(n);
        return viscous_crosscheck(ce.problem, ce.tuple, n, epsilons, step_rule);
    }
    if (which == 2) {
        const auto ce = counterexample2(n);
        return viscous_crosscheck(ce.problem, ce.tuple, n, epsilons, step_rule);
    }
    throw PreconditionError("unknown counterexample " + std::to_string(which));
}

void write_stability_csv(const StabilityReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << "n,concept,verdict,worst_residual,witness\n";
    out << std::setprecision(12);
    for (const auto& r : report.rows) {
        std::string w = r.witness;
        std::replace(w.begin(), w.end(), '"', '\'');
        out << r.n << ',' << r.solution_concept << ',' << (r.passed ? "PASS" : "FAIL") << ',' << r.worst_residual
            << ",\"" << w << "\"\n";
    }
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << "epsilon,step,n,S,sup_err_z,normalization_residual,energy_residual\n";
    out << std::setprecision(12);
    for (const auto& r : rows) {
        out << r.epsilon << ',' << r.step << ',' << r.n << ',' << r.S << ',' << r.sup_err_z << ','
            << r.normalization_residual << ',' << r.energy_residual << '\n';
    }
}

void write_tuple_svg(const ParametrizedTuple& tuple, const std::string& path, const std::string& title) {
    constexpr double width = 640.0;
    constexpr double panel = 160.0;
    constexpr double margin = 40.0;
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << 3 * panel + 2 * margin
        << "\">\n<text x=\"" << margin << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title
        << "</text>\n";
    const PiecewisePath* paths[] = {&tuple.t_hat.path(), &tuple.z_hat.path(), &tuple.ell_hat};
    const char* labels[] = {"t_hat", "z_hat", "ell_hat"};
    for (int p = 0; p < 3; ++p) {
        const PiecewisePath& f = *paths[p];
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < f.breakpoints().size(); ++k) {
            const double s = f.breakpoints()[k];
            const auto& n = f.nodes()[k];
            pts.emplace_back(s, n.left(0));
            pts.emplace_back(s, n.value(0));
            pts.emplace_back(s, n.right(0));
        }
        double lo = pts.front().second;
        double hi = lo;
        for (const auto& [s, y] : pts) {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        if (hi - lo < 1e-12) {
            hi = lo + 1.0;
        }
        const double top = margin + p * panel;
        out << "<text x=\"4\" y=\"" << top + panel / 2 << "\" font-family=\"sans-serif\" font-size=\"11\">" << labels[p]
            << "</text>\n<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (const auto& [s, y] : pts) {
            const double x = margin + (width - 2 * margin) * s / tuple.S;
            const double yy = top + panel - 10.0 - (panel - 20.0) * (y - lo) / (hi - lo);
            out << x << ',' << yy << ' ';
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace rislab
