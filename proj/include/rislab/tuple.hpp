#pragma once

#include "rislab/paths.hpp"

namespace rislab {

/// (S, t̂, ẑ, ℓ̂): arc-length parametrized time, state and load on [0, S].
struct ParametrizedTuple {
    double S;
    LipschitzPath t_hat;
    LipschitzPath z_hat;
    PiecewisePath ell_hat;

    /// Checks that every component lives on [0, S], that t̂ is scalar and
    /// nondecreasing, and that ẑ and ℓ̂ share a dimension.
    ParametrizedTuple(double S, LipschitzPath t_hat, LipschitzPath z_hat, PiecewisePath ell_hat);

    int dim() const { return z_hat.dim(); }
};

struct TupleDistance {
    double sup_z = 0.0;
    double sup_t = 0.0;
    double S_gap = 0.0;
};

/// Sup-distance between two tuples over [0, max(S_a, S_b)], each extended
/// by its final value beyond its own S.
TupleDistance tuple_distance(const ParametrizedTuple& a, const ParametrizedTuple& b);

/// Extends a path constantly to [a, b_new] (b_new ≥ b).
PiecewisePath extend_constant(const PiecewisePath& f, double b_new);

} // namespace rislab
