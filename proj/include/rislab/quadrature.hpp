#pragma once

#include <array>
#include <functional>

namespace rislab::quadrature {

inline constexpr int kGaussNodes = 16;

struct GaussRule {
    std::array<double, kGaussNodes> nodes;   // on (-1, 1)
    std::array<double, kGaussNodes> weights;
};

const GaussRule& gauss_legendre16();

/// 16-point Gauss-Legendre on [a, b].
double gauss16(const std::function<double(double)>& f, double a, double b);

/// Composite 16-point Gauss-Legendre with bisection until two successive
/// estimates agree to `abs_tol` or to rounding level (or `max_depth` halvings).
double adaptive_gauss16(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-13,
                        int max_depth = 18);

} // namespace rislab::quadrature
