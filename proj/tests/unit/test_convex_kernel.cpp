#include "oracles.hpp"

#include "rislab/convex_kernel.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rislab;

TEST_CASE("each family evaluates its support function") {
    const Vec v{{3.0, -4.0}};
    CHECK(Dissipation::scaled_norm(2, 0.5).eval(v) == doctest::Approx(2.5));
    CHECK(Dissipation::weighted_l1(Vec{{0.5, 1.0}}).eval(v) == doctest::Approx(5.5));
    const auto box = Dissipation::polyhedral({Vec{{1.0, 1.0}}, Vec{{-1.0, 1.0}}, Vec{{-1.0, -1.0}}, Vec{{1.0, -1.0}}});
    CHECK(box.eval(v) == doctest::Approx(7.0));
}

TEST_CASE("norm-equivalence constants are sharp") {
    const auto l1 = Dissipation::weighted_l1(Vec{{0.5, 2.0}});
    CHECK(l1.lower_constant() == doctest::Approx(0.5));
    CHECK(l1.upper_constant() == doctest::Approx(std::sqrt(4.25)));
    const auto n = Dissipation::scaled_norm(3, 1.5);
    CHECK(n.lower_constant() == doctest::Approx(1.5));
    CHECK(n.upper_constant() == doctest::Approx(1.5));
    const auto box = Dissipation::polyhedral({Vec{{1.0, 1.0}}, Vec{{-1.0, 1.0}}, Vec{{-1.0, -1.0}}, Vec{{1.0, -1.0}}});
    CHECK(box.lower_constant() == doctest::Approx(1.0));
    CHECK(box.upper_constant() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("norm-equivalence holds on random directions") {
    std::mt19937 rng(1);
    for (int kind = 0; kind < 3; ++kind) {
        for (int d = 1; d <= 3; ++d) {
            const auto R = oracle::random_dissipation(rng, d, kind);
            for (int k = 0; k < 50; ++k) {
                const Vec v = oracle::random_vec(rng, d);
                CHECK(R.eval(v) >= R.lower_constant() * v.norm() - 1e-12);
                CHECK(R.eval(v) <= R.upper_constant() * v.norm() + 1e-12);
            }
        }
    }
}

TEST_CASE("invalid dissipations are rejected") {
    CHECK_THROWS_AS(Dissipation::scaled_norm(2, 0.0), PreconditionError);
    CHECK_THROWS_AS(Dissipation::weighted_l1(Vec{{1.0, -1.0}}), PreconditionError);
    CHECK_THROWS_AS(Dissipation::polyhedral({Vec{{1.0, 0.0}}, Vec{{0.0, 1.0}}, Vec{{1.0, 1.0}}}), PreconditionError);
    CHECK_THROWS_AS(Dissipation::scaled_norm(2, 1.0).eval(scalar_vec(1.0)), PreconditionError);
}

TEST_CASE("projection onto the elastic region satisfies the variational inequality") {
    std::mt19937 rng(2);
    for (int kind = 0; kind < 3; ++kind) {
        for (int d = 1; d <= 3; ++d) {
            const auto R = oracle::random_dissipation(rng, d, kind);
            for (int k = 0; k < 20; ++k) {
                const Vec w = oracle::random_vec(rng, d, 2.0);
                const Vec p = R.project_subdiff0(w);
                // p ∈ K and ⟨w - p, v - p⟩ ≤ 0 for every v ∈ K, i.e. R(w - p) = ⟨w - p, p⟩
                CHECK(R.eval(w - p) == doctest::Approx((w - p).dot(p)).epsilon(1e-8).scale(1.0));
                for (int j = 0; j < 10; ++j) {
                    const Vec u = oracle::random_vec(rng, d);
                    CHECK(u.dot(p) <= R.eval(u) + 1e-9);
                }
                CHECK(R.dist_to_subdiff0(w) == doctest::Approx((w - p).norm()));
            }
        }
    }
}

TEST_CASE("Wolfe and enumeration agree on polytope projections") {
    std::mt19937 rng(3);
    for (int d = 1; d <= 3; ++d) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Vec> pts;
            for (int k = 0; k < 6; ++k) {
                pts.push_back(oracle::random_vec(rng, d));
            }
            const Vec w = oracle::random_vec(rng, d, 2.0);
            const Vec a = polytope::project_by_enumeration(pts, w);
            const Vec b = polytope::project_by_wolfe(pts, w);
            CHECK((a - b).norm() < 1e-8);
        }
    }
}

TEST_CASE("projection face label vanishes exactly on the elastic region") {
    std::mt19937 rng(17);
    for (int kind = 0; kind < 3; ++kind) {
        for (int d = 1; d <= 3; ++d) {
            const auto R = oracle::random_dissipation(rng, d, kind);
            for (int trial = 0; trial < 200; ++trial) {
                const Vec w = oracle::random_vec(rng, d, 2.5);
                CHECK((R.projection_face(w) == 0) == (R.dist_to_subdiff0(w) <= 1e-12 * R.upper_constant()));
            }
        }
    }
}

TEST_CASE("projection face label separates the faces of a square") {
    const auto R = Dissipation::polyhedral({Vec{{1.0, 1.0}}, Vec{{-1.0, 1.0}}, Vec{{-1.0, -1.0}}, Vec{{1.0, -1.0}}});
    CHECK(R.projection_face(Vec{{3.0, 0.2}}) == R.projection_face(Vec{{2.0, -0.5}}));
    CHECK(R.projection_face(Vec{{3.0, 0.2}}) != R.projection_face(Vec{{3.0, 2.0}}));
    CHECK(R.dist_to_subdiff0(Vec{{3.0, 0.2}}) == doctest::Approx(2.0));
    CHECK(R.dist_to_subdiff0(Vec{{3.0, 2.0}}) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("inner radius of a square and of a shifted set") {
    const std::vector<Vec> square{Vec{{1.0, 1.0}}, Vec{{-1.0, 1.0}}, Vec{{-1.0, -1.0}}, Vec{{1.0, -1.0}}};
    CHECK(polytope::inner_radius(square) == doctest::Approx(1.0));
    const std::vector<Vec> shifted{Vec{{1.0, 1.0}}, Vec{{2.0, 1.0}}, Vec{{1.0, 2.0}}};
    CHECK(polytope::inner_radius(shifted) == 0.0);
}

TEST_CASE("distance to the subdifferential at a nonzero rate uses the exposed face") {
    const auto R = Dissipation::weighted_l1(Vec{{0.5, 1.0}});
    // ∂R((1, 0)) = {0.5} × [-1, 1]
    CHECK(R.dist_to_subdiff(Vec{{1.0, 0.0}}, Vec{{0.0, 0.5}}) == doctest::Approx(0.5));
    CHECK(R.dist_to_subdiff(Vec{{1.0, 0.0}}, Vec{{0.5, 2.0}}) == doctest::Approx(1.0));
    const auto N = Dissipation::scaled_norm(2, 2.0);
    CHECK(N.dist_to_subdiff(Vec{{0.0, 3.0}}, Vec{{0.0, 2.0}}) == doctest::Approx(0.0));
    CHECK(N.dist_to_subdiff(Vec{{0.0, 3.0}}, Vec{{0.0, 0.0}}) == doctest::Approx(2.0));
    CHECK(N.dist_to_subdiff(Vec::Zero(2), Vec{{0.0, 3.0}}) == doctest::Approx(1.0));
}

TEST_CASE("prox is the minimizer of λR + ½‖· - v‖²") {
    std::mt19937 rng(4);
    for (int kind = 0; kind < 3; ++kind) {
        const auto R = oracle::random_dissipation(rng, 2, kind);
        for (int k = 0; k < 10; ++k) {
            const Vec v = oracle::random_vec(rng, 2, 2.0);
            const double lambda = 0.7;
            const Vec x = R.prox(v, lambda);
            auto obj = [&](const Vec& y) { return lambda * R.eval(y) + 0.5 * (y - v).squaredNorm(); };
            for (int j = 0; j < 50; ++j) {
                const Vec y = x + oracle::random_vec(rng, 2, 0.1);
                CHECK(obj(x) <= obj(y) + 1e-12);
            }
        }
    }
}

TEST_CASE("scaled distance equals the constrained conjugate on a grid") {
    std::mt19937 rng(5);
    for (int kind = 0; kind < 3; ++kind) {
        for (int d = 1; d <= 3; ++d) {
            const auto R = oracle::random_dissipation(rng, d, kind);
            for (double tau : {0.5, 1.0, 2.0}) {
                const Vec eta = oracle::random_vec(rng, d, 3.0);
                const double exact = tau * R.dist_to_subdiff0(eta);
                const double grid = oracle::grid_sup_conjugate(R, eta, tau);
                CHECK(std::abs(exact - grid) <= 1e-3 * std::max(exact, 1e-3));
            }
        }
    }
}

TEST_CASE("contact potential splits into rate and distance parts") {
    const auto R = Dissipation::scaled_norm(1, 1.0);
    const auto p = contact_potential(R, scalar_vec(2.0), scalar_vec(1.5));
    CHECK(p.r_part == doctest::Approx(2.0));
    CHECK(p.dist_part == doctest::Approx(1.0));
    CHECK(p.total == doctest::Approx(3.0));
    CHECK(contact_potential(R, scalar_vec(0.0), scalar_vec(5.0)).total == 0.0);
}
