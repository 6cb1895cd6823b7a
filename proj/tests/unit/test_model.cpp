#include "oracles.hpp"

#include "rislab/log.hpp"
#include "rislab/model.hpp"
#include "rislab/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rislab;

TEST_CASE("Gauss-Legendre rule integrates polynomials of degree 31 exactly") {
    const auto& rule = quadrature::gauss_legendre16();
    double wsum = 0.0;
    for (double w : rule.weights) {
        wsum += w;
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(quadrature::gauss16([](double x) { return std::pow(x, 30); }, 0.0, 1.0) == doctest::Approx(1.0 / 31));
    CHECK(quadrature::adaptive_gauss16([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-11));
    CHECK(quadrature::adaptive_gauss16([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1e-13) ==
          doctest::Approx(0.29).epsilon(1e-12));
}

TEST_CASE("gradients of the built-in nonlinearities match finite differences") {
    std::mt19937 rng(21);
    const std::vector<Nonlinearity> fs{Nonlinearity::zero(2), Nonlinearity::linear(Vec{{1.0, -2.0}}),
                                       Nonlinearity::double_well(2, 3.0),
                                       Nonlinearity::polynomial(2, {1.0, 0.5, 0.0, 0.25, 0.1})};
    for (const auto& F : fs) {
        for (int k = 0; k < 10; ++k) {
            const Vec z = oracle::random_vec(rng, 2);
            const Vec g = F.gradient(z);
            for (int i = 0; i < 2; ++i) {
                Vec e = Vec::Zero(2);
                e(i) = 1e-6;
                const double fd = (F.value(z + e) - F.value(z - e)) / 2e-6;
                CHECK(g(i) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
            }
            if (F.hessian) {
                const Mat H = (*F.hessian)(z);
                for (int i = 0; i < 2; ++i) {
                    Vec e = Vec::Zero(2);
                    e(i) = 1e-6;
                    const Vec col = (F.gradient(z + e) - F.gradient(z - e)) / 2e-6;
                    CHECK((H.col(i) - col).norm() < 1e-5 * (1.0 + col.norm()));
                }
            }
        }
    }
}

TEST_CASE("energy model validates A and evaluates E and DE") {
    CHECK_THROWS_AS(EnergyModel(Mat{{1.0, 2.0}, {0.0, 1.0}}, Nonlinearity::zero(2)), PreconditionError);
    CHECK_THROWS_AS(EnergyModel(Mat{{1.0, 0.0}, {0.0, -1.0}}, Nonlinearity::zero(2)), PreconditionError);
    const EnergyModel E(Mat{{2.0, 1.0}, {1.0, 2.0}}, Nonlinearity::linear(Vec{{1.0, 0.0}}));
    const Vec z{{1.0, -1.0}};
    CHECK(E.energy(z) == doctest::Approx(0.5 * 2.0 + 1.0));
    CHECK((E.gradient(z) - Vec{{2.0, -1.0}}).norm() < 1e-15);
    CHECK_FALSE(E.scalar_A().has_value());
    CHECK(EnergyModel(3.0 * Mat::Identity(2, 2), Nonlinearity::zero(2)).scalar_A().value() == 3.0);
}

TEST_CASE("a nonlinearity with negative values triggers a warning") {
    std::vector<std::string> seen;
    const auto previous = set_warning_handler([&seen](const std::string& m) { seen.push_back(m); });
    EnergyModel(Mat::Identity(1, 1), Nonlinearity::linear(scalar_vec(-1.0)));
    EnergyModel(Mat::Identity(1, 1), Nonlinearity::double_well(1, 1.0));
    set_warning_handler(previous);
    CHECK(seen.size() == 1);
}

TEST_CASE("initial stability is measured by the distance to the elastic region") {
    const auto R = Dissipation::scaled_norm(1, 1.0);
    const EnergyModel E(Mat::Identity(1, 1), Nonlinearity::linear(scalar_vec(-1.0)));
    const auto ok = check_initial_stability(R, E, scalar_vec(0.0), scalar_vec(0.0));
    CHECK(ok.stable);
    CHECK(ok.residual == 0.0);
    const auto bad = check_initial_stability(R, E, scalar_vec(3.0), scalar_vec(0.0));
    CHECK_FALSE(bad.stable);
    CHECK(bad.residual == doctest::Approx(1.0));
}

TEST_CASE("problems validate the load domain and initial stability") {
    const auto R = Dissipation::scaled_norm(1, 1.0);
    const EnergyModel E(Mat::Identity(1, 1), Nonlinearity::zero(1));
    const auto load = PiecewisePath::constant(0.0, 2.0, scalar_vec(0.0));
    CHECK_NOTHROW(RISProblem(E, R, load, scalar_vec(0.5), scalar_vec(0.0), 2.0));
    CHECK_THROWS_AS(RISProblem(E, R, load, scalar_vec(0.5), scalar_vec(0.0), 1.0), PreconditionError);
    CHECK_THROWS_AS(RISProblem(E, R, load, scalar_vec(2.0), scalar_vec(0.0), 2.0), PreconditionError);
    CHECK_THROWS_AS(RISProblem(E, R, load, scalar_vec(0.0), scalar_vec(0.0), -1.0), PreconditionError);
    const RISProblem p(E, R, load, scalar_vec(0.5), scalar_vec(0.0), 2.0);
    const auto ramp = PiecewisePath::scalar({0.0, 2.0}, {0.0, 1.0});
    const auto q = p.with_load(ramp);
    CHECK(energy_I(q, 2.0, scalar_vec(1.0)) == doctest::Approx(-0.5));
    CHECK(grad_I(q, 1.0, scalar_vec(1.0))(0) == doctest::Approx(0.5));
}
