#include "oracles.hpp"

#include "rislab/checkers.hpp"
#include "rislab/construction.hpp"
#include "rislab/experiments.hpp"
#include "rislab/log.hpp"
#include "rislab/viscous_solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace rislab;

namespace {

struct Verdict {
    bool passed = false;
    std::string detail;
};

class Timer {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

Verdict criterion1() {
    Timer timer;
    bool ok = true;
    double worst = 0.0;
    for (int n : kDefaultNs) {
        const auto ce = counterexample1(n);
        const auto report = check_normalized_pbv(ce.tuple, ce.problem);
        ok = ok && report.overall();
        worst = std::max(worst, report.worst_residual());
    }
    const double t = timer.seconds();
    ok = ok && worst <= 1e-8 && t < 1.0;
    return {ok, "worst residual " + fmt(worst) + ", runtime " + fmt(t) + " s"};
}

Verdict criterion2() {
    const auto ce = counterexample1_limit();
    const auto problem = scalar_benchmark_problem(ce.load);
    const auto pbv = check_normalized_pbv(ce.tuple, problem);
    const auto relaxed = check_relaxed(ce.tuple, problem);
    const auto failed = pbv.failed_ids();
    bool ok = failed == std::vector<std::string>{"load_compatibility"};
    double lo = -1.0;
    double hi = -1.0;
    if (ok) {
        const auto& w = pbv.at("load_compatibility").witness;
        ok = w.has_value();
        if (ok) {
            lo = w->lo;
            hi = w->hi;
            ok = std::abs(lo - 1.0) <= 1e-12 && std::abs(hi - 1.5) <= 1e-12;
        }
    }
    ok = ok && relaxed.overall() && relaxed.worst_residual() <= 1e-8;
    return {ok, "failed " + std::to_string(failed.size()) + " condition(s), witness (" + fmt(lo) + ", " + fmt(hi) +
                    "), relaxed worst residual " + fmt(relaxed.worst_residual())};
}

Verdict criterion3() {
    bool ok = true;
    for (int n : kDefaultNs) {
        const auto ce = counterexample2(n);
        ok = ok && check_differential(ce.z, ce.problem).overall() && check_local(ce.z, ce.problem).overall();
    }
    const auto lim = counterexample2_limit();
    const auto problem = scalar_benchmark_problem(lim.load);
    const auto gap = max_energy_gap(lim.z_tilde, problem);
    ok = ok && std::abs(gap.gap - 0.125) <= 1e-10 && gap.t1 == 0.0 && gap.t2 > 1.0;
    return {ok, "gap " + fmt(gap.gap) + " at t1 = " + fmt(gap.t1) + ", t2 = " + fmt(gap.t2)};
}

Verdict criterion4() {
    const auto r1 = stability_experiment(counterexample1_setup(), kDefaultNs);
    const auto r2 = stability_experiment(counterexample2_setup(), kDefaultNs);
    const auto& d1 = r1.load_diagnostics;
    const auto& d2 = r2.load_diagnostics;
    bool ok = d1.mode() == ConvergenceMode::Intermediate && std::abs(d1.limit_variation - 0.5) <= 1e-12 &&
              std::abs(d1.entries.back().variation - 0.5) <= 1e-12;
    ok = ok && d2.mode() == ConvergenceMode::WeakStarOnly && d2.limit_variation == 0.0;
    for (const auto& e : d2.entries) {
        ok = ok && std::abs(e.variation - 1.0) <= 1e-12;
    }
    return {ok, "first family " + to_string(d1.mode()) + ", second family " + to_string(d2.mode())};
}

Verdict criterion5() {
    bool ok = true;
    double worst = 0.0;
    int count = 0;
    for (int n : kDefaultNs) {
        const auto ce = counterexample2(n);
        const auto result = construct_relaxed_from_local(ce.z, ce.problem);
        ok = ok && result.relaxed_report.overall();
        worst = std::max(worst, result.relaxed_report.worst_residual());
    }
    std::mt19937 rng(20240501);
    for (int trial = 0; trial < 24; ++trial) {
        const auto sol = oracle::random_local_solution(rng, 1 + trial % 2, 4 + trial % 5);
        try {
            const auto result = construct_relaxed_from_local(sol.z, sol.problem);
            ok = ok && result.relaxed_report.overall();
            worst = std::max(worst, result.relaxed_report.worst_residual());
            ++count;
        } catch (const std::exception&) {
            ok = false;
        }
    }
    ok = ok && worst <= 1e-8 && count >= 20;

    const auto jump = construct_relaxed_from_local(step_state(0.0), scalar_benchmark_problem(ce1_limit_load()));
    double jump_err = 0.0;
    const auto& tuple = jump.tuple;
    for (const auto& iv : jump.decomposition.intervals()) {
        if (!(iv.hi > iv.lo)) {
            continue;
        }
        const Vec q = (tuple.z_hat(iv.hi) - tuple.z_hat(iv.lo)) / (iv.hi - iv.lo);
        for (int k = 1; k < 200; ++k) {
            const double s = iv.lo + (iv.hi - iv.lo) * k / 200.0;
            const Vec z = tuple.z_hat(s);
            const Vec expected = z - scalar_vec(1.0) + q / q.squaredNorm();
            jump_err = std::max(jump_err, (tuple.ell_hat.value(s) - expected).norm());
        }
    }
    ok = ok && jump.decomposition.jumps.size() == 1 && jump_err <= 1e-12;
    return {ok, std::to_string(count) + " random solutions, worst residual " + fmt(worst) + ", jump load error " +
                    fmt(jump_err)};
}

Verdict criterion6() {
    const auto r = remark44_tuple();
    const double residual = normalization_residual(r.tuple, r.problem);
    const double expected = std::sqrt(1.25) * 0.3;
    bool rejected = false;
    try {
        construct_relaxed_from_local(PiecewisePath::constant(0.0, r.problem.T, r.problem.z0), r.problem);
    } catch (const PreconditionError&) {
        rejected = true;
    }
    const bool ok = std::abs(residual - expected) <= 1e-6 && rejected;
    return {ok, "normalization residual " + fmt(residual) + ", asymmetric R " + (rejected ? "rejected" : "accepted")};
}

Verdict criterion7() {
    std::mt19937 rng(7001);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + trial % 3;
        const auto R = oracle::random_dissipation(rng, d, trial % 3);
        const auto z = oracle::random_continuous_path(rng, d, 0.0, 1.0 + trial % 4, 3 + trial % 9);
        const double exact = dissipation(R, z, z.a(), z.b());
        const double ref = oracle::refinement_sup_dissipation(R, z, z.a(), z.b());
        worst = std::max(worst, std::abs(exact - ref) / std::max(ref, 1e-300));
    }
    return {worst <= 1e-9, "worst relative deviation " + fmt(worst)};
}

Verdict criterion8() {
    std::mt19937 rng(8001);
    std::uniform_real_distribution<double> u(0.25, 2.5);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + trial % 3;
        const auto R = oracle::random_dissipation(rng, d, trial % 3);
        const double tau = u(rng);
        Vec eta = oracle::random_vec(rng, d, 1.0);
        eta *= (R.upper_constant() + u(rng)) / eta.norm();
        const double exact = tau * R.dist_to_subdiff0(eta);
        const double grid = oracle::grid_sup_conjugate(R, eta, tau);
        worst = std::max(worst, std::abs(exact - grid) / exact);
    }
    return {worst <= 1e-3, "worst relative deviation " + fmt(worst)};
}

Verdict criterion9() {
    std::mt19937 rng(9001);
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + trial % 3;
        const auto problem = oracle::random_problem(rng, d, trial % 3, 1.0);
        const auto tuple = oracle::random_tuple(rng, d, 1.0);
        std::uniform_real_distribution<double> u(0.0, tuple.S);
        for (int k = 0; k < 50; ++k) {
            double s1 = u(rng);
            double s2 = u(rng);
            if (s1 > s2) {
                std::swap(s1, s2);
            }
            worst = std::min(worst, energy_residual(tuple, problem, s1, s2));
        }
    }
    return {worst >= -1e-7, "smallest residual " + fmt(worst)};
}

Verdict criterion10() {
    Timer timer;
    const auto ce = counterexample1(4);
    const auto traj = solve_viscous(ce.problem, 1e-3, 1e-4);
    const auto tuple = reparametrize(traj, ce.problem);
    const auto dist = tuple_distance(tuple, ce.tuple);
    const double sup = std::max(dist.sup_z, dist.sup_t);
    const auto sweep = viscous_crosscheck(1, 4, {4e-3, 2e-3, 1e-3});
    const double t = timer.seconds();
    const bool ok = sup <= 5e-2 && std::abs(tuple.S - 2.5) <= 5e-2 && sweep.monotone && t < 30.0;
    std::ostringstream os;
    os << "sup error " << fmt(sup) << ", S = " << fmt(tuple.S) << ", halving errors";
    for (const auto& row : sweep.rows) {
        os << ' ' << fmt(std::max(row.sup_err_z, row.sup_err_t));
    }
    os << (sweep.monotone ? " (monotone)" : " (not monotone)") << ", runtime " << fmt(t) << " s";
    return {ok, os.str()};
}

} // namespace

int main() {
    set_warning_handler({});
    const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9, criterion10};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2zu: %s  %s\n", i + 1, v.passed ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
        failures += v.passed ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
