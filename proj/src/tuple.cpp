#include "rislab/tuple.hpp"

#include <algorithm>
#include <cmath>

namespace rislab {

ParametrizedTuple::ParametrizedTuple(double S_, LipschitzPath t_hat_, LipschitzPath z_hat_, PiecewisePath ell_hat_)
    : S(S_), t_hat(std::move(t_hat_)), z_hat(std::move(z_hat_)), ell_hat(std::move(ell_hat_)) {
    if (!(S > 0.0) || !std::isfinite(S)) {
        throw PreconditionError("S must be positive and finite");
    }
    const PiecewisePath* parts[] = {&t_hat.path(), &z_hat.path(), &ell_hat};
    for (const PiecewisePath* p : parts) {
        if (p->a() != 0.0 || p->b() != S) {
            throw PreconditionError("tuple components must be defined on [0, S]");
        }
    }
    if (t_hat.dim() != 1) {
        throw PreconditionError("t_hat must be scalar");
    }
    if (!t_hat.nondecreasing_scalar()) {
        throw PreconditionError("t_hat must be nondecreasing");
    }
    if (z_hat.dim() != ell_hat.dim()) {
        throw PreconditionError("z_hat and ell_hat dimensions differ");
    }
}

PiecewisePath extend_constant(const PiecewisePath& f, double b_new) {
    if (b_new < f.b()) {
        throw PreconditionError("extension must not shrink the domain");
    }
    if (b_new == f.b()) {
        return f;
    }
    auto ts = f.breakpoints();
    auto nodes = f.nodes();
    ts.push_back(b_new);
    nodes.push_back(Node::continuous(nodes.back().value));
    return PiecewisePath(std::move(ts), std::move(nodes));
}

TupleDistance tuple_distance(const ParametrizedTuple& a, const ParametrizedTuple& b) {
    if (a.dim() != b.dim()) {
        throw PreconditionError("tuples have different dimensions");
    }
    const double S = std::max(a.S, b.S);
    TupleDistance d;
    d.sup_z = sup_distance(extend_constant(a.z_hat.path(), S), extend_constant(b.z_hat.path(), S));
    d.sup_t = sup_distance(extend_constant(a.t_hat.path(), S), extend_constant(b.t_hat.path(), S));
    d.S_gap = std::abs(a.S - b.S);
    return d;
}

} // namespace rislab
