#include "oracles.hpp"

#include "rislab/checkers.hpp"
#include "rislab/experiments.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <random>

using namespace rislab;

namespace {

double energy_residual_oracle(const ParametrizedTuple& tuple, const RISProblem& problem, double s1, double s2) {
    const auto& E = problem.energy;
    auto integrand = [&](double s) {
        const auto& z = tuple.z_hat.path();
        const Vec q = z.slope(z.segment_index(s));
        const Vec w = tuple.ell_hat.value(s) - E.gradient(z.value(s));
        return problem.R.eval(q) + q.norm() * problem.R.dist_to_subdiff0(w) - tuple.ell_hat.value(s).dot(q);
    };
    return E.energy(tuple.z_hat(s2)) - E.energy(tuple.z_hat(s1)) +
           oracle::midpoint_integral(integrand, s1, s2, 400000);
}

} // namespace

TEST_CASE("the stationary tuple satisfies every concept") {
    const auto setup = stationary_setup();
    const auto tuple = setup.tuples.limit;
    CHECK(check_normalized_pbv(tuple, setup.base).overall());
    CHECK(check_relaxed(tuple, setup.base).overall());
}

TEST_CASE("reports expose conditions, residuals and serializations") {
    const auto ce = counterexample1_limit();
    const auto problem = scalar_benchmark_problem(ce.load);
    const auto report = check_normalized_pbv(ce.tuple, problem);
    CHECK_FALSE(report.overall());
    CHECK(report.failed_ids() == std::vector<std::string>{"load_compatibility"});
    CHECK(report.worst_residual() == doctest::Approx(0.5));
    CHECK(report.find("nonexistent") == nullptr);
    CHECK_THROWS(report.at("nonexistent"));
    const auto j = nlohmann::json::parse(report.to_json());
    CHECK(j["concept"] == "normalized_pbv");
    CHECK(j["overall"] == "fail");
    CHECK(j["conditions"].size() == report.conditions.size());
    CHECK(report.to_table().find("load_compatibility") != std::string::npos);
    const auto& c = report.at("load_compatibility");
    REQUIRE(c.witness.has_value());
    CHECK(c.witness->lo == doctest::Approx(1.0));
    CHECK(c.witness->hi == doctest::Approx(1.5));
}

TEST_CASE("concept names round-trip") {
    for (auto c : {SolutionConcept::Differential, SolutionConcept::Local, SolutionConcept::NormalizedPbv,
                   SolutionConcept::Relaxed}) {
        CHECK(parse_concept(to_string(c)) == c);
    }
    CHECK(parse_concept("pbv") == SolutionConcept::NormalizedPbv);
    CHECK_THROWS(parse_concept("weak"));
}

TEST_CASE("increasing set and plateaus partition the parameter interval") {
    const LipschitzPath t_hat(PiecewisePath::scalar({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 0.0, 1.0, 1.0, 1.5}));
    const auto inc = increasing_set(t_hat);
    CHECK(inc.measure() == doctest::Approx(2.0));
    CHECK(inc.contains(1.5));
    CHECK_FALSE(inc.contains(2.5));
    CHECK_FALSE(inc.contains(2.0));
    const auto flats = plateaus(t_hat);
    REQUIRE(flats.size() == 2);
    CHECK(flats[1].first == 2.0);
    CHECK(flats[1].second == 3.0);
}

TEST_CASE("energy residual agrees with direct quadrature") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 12; ++trial) {
        const int d = 1 + trial % 2;
        const auto problem = oracle::random_problem(rng, d, trial % 3, 1.0);
        const auto tuple = oracle::random_tuple(rng, d, 1.0);
        std::uniform_real_distribution<double> u(0.0, tuple.S);
        double s1 = u(rng);
        double s2 = u(rng);
        if (s1 > s2) {
            std::swap(s1, s2);
        }
        const double exact = energy_residual(tuple, problem, s1, s2);
        CHECK(exact == doctest::Approx(energy_residual_oracle(tuple, problem, s1, s2)).epsilon(1e-5).scale(1.0));
        CHECK(exact >= -1e-7);
    }
}

TEST_CASE("the asymmetric jump tuple violates the normalization") {
    const auto r = remark44_tuple();
    CHECK(normalization_residual(r.tuple, r.problem) == doctest::Approx(std::sqrt(1.25) * 0.3).epsilon(1e-9));
    const auto report = check_relaxed(r.tuple, r.problem);
    CHECK_FALSE(report.at("normalization").passed);
}

TEST_CASE("local checker accepts the ramp solutions and measures the gap of the stepped state") {
    for (int n : {1, 2, 4, 8}) {
        const auto ce = counterexample2(n);
        CHECK(check_local(ce.z, ce.problem).overall());
        CHECK(check_differential(ce.z, ce.problem).overall());
    }
    const auto lim = counterexample2_limit();
    const auto problem = scalar_benchmark_problem(lim.load);
    const auto gap = max_energy_gap(lim.z_tilde, problem);
    CHECK(gap.gap == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(gap.t1 == 0.0);
    CHECK(gap.t2 > 1.0);
    const auto report = check_local(lim.z_tilde, problem);
    CHECK_FALSE(report.at("energy_inequality").passed);
    CHECK(report.at("local_stability").passed);
}

TEST_CASE("local checker flags instability and the differential checker rejects jumps") {
    const auto problem = scalar_benchmark_problem(ce1_load(2));
    const auto moved = PiecewisePath::scalar({0.0, 1.0, 2.0}, {0.0, 0.0, -1.0});
    const auto report = check_local(moved, problem);
    CHECK_FALSE(report.at("local_stability").passed);
    CHECK_THROWS_AS(check_differential(step_state(0.0), problem), PreconditionError);
}

TEST_CASE("random continuous local solutions pass both physical-time checks") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const auto sol = oracle::random_local_solution(rng, 1 + trial % 2, 6);
        const auto report = check_local(sol.z, sol.problem);
        CHECK(report.overall());
        CHECK(check_differential(sol.z, sol.problem).overall());
    }
}
