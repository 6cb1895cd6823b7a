#include "rislab/quadrature.hpp"

#include <algorithm>
#include <limits>

#include <cmath>
#include <numbers>

namespace rislab::quadrature {
namespace {

GaussRule build_rule() {
    GaussRule rule{};
    constexpr int n = kGaussNodes;
    for (int i = 0; i < n; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

double recurse(const std::function<double(double)>& f, double a, double b, double whole, double tol, double floor,
               int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss16(f, a, mid);
    const double right = gauss16(f, mid, b);
    const double refined = left + right;
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
    if (depth <= 0 || std::abs(refined - whole) <= std::max({tol, noise, floor})) {
        return refined;
    }
    return recurse(f, a, mid, left, 0.5 * tol, 0.5 * floor, depth - 1) +
           recurse(f, mid, b, right, 0.5 * tol, 0.5 * floor, depth - 1);
}

} // namespace

const GaussRule& gauss_legendre16() {
    static const GaussRule rule = build_rule();
    return rule;
}

double gauss16(const std::function<double(double)>& f, double a, double b) {
    const auto& rule = gauss_legendre16();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < kGaussNodes; ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

double adaptive_gauss16(const std::function<double(double)>& f, double a, double b, double abs_tol, int max_depth) {
    if (!(b > a)) {
        return 0.0;
    }
    const double whole = gauss16(f, a, b);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(whole);
    return recurse(f, a, b, whole, abs_tol, floor, max_depth);
}

} // namespace rislab::quadrature
