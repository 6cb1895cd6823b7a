#include "rislab/construction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rislab {
namespace {

constexpr int kNonlinearSubdivisions = 64;

void require_symmetric(const Dissipation& R) {
    if (R.kind() != DissipationKind::ScaledNorm) {
        throw PreconditionError("the construction needs a symmetric dissipation (a scaled Euclidean norm); got " +
                                R.describe() +
                                ", for which the jump normalization t' + R(z') + |z'| dist(-DI, dR(0)) = 1 fails");
    }
}

struct TrajectoryNode {
    double s;
    double t;
    Vec z;
};

} // namespace

std::vector<JumpDecomposition::Interval> JumpDecomposition::intervals() const {
    std::vector<Interval> out{{0.0, initial_length}};
    for (const auto& j : jumps) {
        const auto k = *s_map.breakpoint_index(j.t);
        const auto& n = s_map.nodes()[k];
        out.push_back({n.left(0), n.right(0)});
    }
    return out;
}

double diss0(const Dissipation& R, const PiecewisePath& z, const Vec& z0, double t) {
    if (!z.contains(t)) {
        throw DomainError("diss0 evaluated outside the path domain");
    }
    if (t == z.a()) {
        return 0.0;
    }
    const Vec z0_plus = z.right_limit(z.a());
    return R.eval(z0_plus - z0) + dissipation(R, z, z.a(), t) - R.eval(z0_plus - z.value(z.a()));
}

Parametrization build_parametrization(const PiecewisePath& z, const Dissipation& R, const Vec& z0, double T) {
    require_symmetric(R);
    if (z.a() != 0.0 || z.b() != T) {
        throw DomainError("z must be defined on [0, T]");
    }
    if (z.dim() != R.dim() || z0.size() != z.dim()) {
        throw PreconditionError("dimensions of z, z0 and R differ");
    }
    std::vector<JumpTriple> jumps;
    std::vector<TrajectoryNode> traj{{0.0, 0.0, z0}};
    std::vector<Node> s_nodes;

    const Vec z0_plus = z.right_limit(0.0);
    const double initial_length = R.eval(z0_plus - z0);
    double s = initial_length;
    if (initial_length > 0.0) {
        traj.push_back({s, 0.0, z0_plus});
    }
    s_nodes.push_back(Node{scalar_vec(0.0), scalar_vec(0.0), scalar_vec(s)});

    const auto& bps = z.breakpoints();
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        const double t0 = bps[k];
        const double t1 = bps[k + 1];
        const Vec left = z.left_limit(t1);
        s += (t1 - t0) + R.eval(left - z.right_limit(t0));
        traj.push_back({s, t1, left});
        const double s_minus = s;

        const Vec value = z.value(t1);
        const double a = R.eval(value - left);
        if (a > 0.0) {
            s += a;
            traj.push_back({s, t1, value});
        }
        const double s_mid = s;
        const Vec right = z.right_limit(t1);
        const double b = R.eval(right - value);
        if (b > 0.0) {
            s += b;
            traj.push_back({s, t1, right});
        }
        s_nodes.push_back(Node{scalar_vec(s_minus), scalar_vec(s_mid), scalar_vec(s)});
        if (a > 0.0 || b > 0.0) {
            jumps.push_back({t1, left, value, right});
        }
    }
    JumpDecomposition dec{std::move(jumps), initial_length > 0.0, initial_length, PiecewisePath(bps, std::move(s_nodes))};

    std::vector<double> ss;
    std::vector<Vec> ts;
    std::vector<Vec> zs;
    for (const auto& n : traj) {
        ss.push_back(n.s);
        ts.push_back(scalar_vec(n.t));
        zs.push_back(n.z);
    }
    const double S = s;
    LipschitzPath t_hat(PiecewisePath::interpolate(ss, ts), 1.0);
    LipschitzPath z_hat(PiecewisePath::interpolate(ss, zs), 1.0 / R.lower_constant());
    return Parametrization{std::move(dec), S, std::move(t_hat), std::move(z_hat)};
}

PiecewisePath build_load_hat(const LipschitzPath& t_hat, const LipschitzPath& z_hat, const PiecewisePath& ell,
                             const EnergyModel& energy) {
    if (z_hat.dim() != energy.dim() || ell.dim() != energy.dim()) {
        throw PreconditionError("dimensions of z_hat, load and energy differ");
    }
    if (t_hat.a() != z_hat.a() || t_hat.b() != z_hat.b()) {
        throw PreconditionError("t_hat and z_hat must share a domain");
    }
    const PiecewisePath composed = compose_monotone(ell, t_hat);
    const PiecewisePath* paths[] = {&composed, &z_hat.path()};
    const auto pts = merged_breakpoints(paths, t_hat.a(), t_hat.b());

    auto jump_load = [&energy](const Vec& z, const Vec& q) { return (energy.gradient(z) + q / q.squaredNorm()).eval(); };

    std::vector<double> ss{pts.front()};
    std::vector<Node> nodes{Node::continuous(composed.value(pts.front()))};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double u = pts[i];
        const double v = pts[i + 1];
        const bool flat = t_hat.path().scalar_value(u) == t_hat.path().scalar_value(v);
        const Vec zu = z_hat(u);
        const Vec zv = z_hat(v);
        const Vec q = (zv - zu) / (v - u);
        Node end = Node::continuous(composed.value(v));
        if (!flat || q.squaredNorm() == 0.0) {
            nodes.back().right = composed.right_limit(u);
            end.left = composed.left_limit(v);
        } else {
            nodes.back().right = jump_load(zu, q);
            end.left = jump_load(zv, q);
            if (!energy.F().affine_gradient) {
                for (int j = 1; j < kNonlinearSubdivisions; ++j) {
                    const double theta = static_cast<double>(j) / kNonlinearSubdivisions;
                    const double sj = u + theta * (v - u);
                    ss.push_back(sj);
                    nodes.push_back(Node::continuous(jump_load((1.0 - theta) * zu + theta * zv, q)));
                }
            }
        }
        ss.push_back(v);
        nodes.push_back(std::move(end));
    }
    nodes.back().right = nodes.back().value;
    return PiecewisePath(std::move(ss), std::move(nodes));
}

double ConstructionResult::worst_projection_error() const {
    double e = 0.0;
    for (const auto& w : projection_witness) {
        e = std::max(e, w.error);
    }
    return e;
}

ConstructionResult construct_relaxed_from_local(const PiecewisePath& z, const RISProblem& problem, double tol) {
    require_symmetric(problem.R);
    if (z.a() != 0.0 || z.b() != problem.T) {
        throw DomainError("z must be defined on [0, T]");
    }
    CheckReport local = check_local(z, problem, tol);
    if (!local.overall()) {
        std::ostringstream os;
        os << "z is not a local solution:";
        for (const auto& c : local.conditions) {
            if (!c.passed) {
                os << ' ' << c.id << " residual " << c.residual;
                if (c.witness) {
                    os << " (" << c.witness->description << ")";
                }
            }
        }
        throw PreconditionError(os.str());
    }

    Parametrization par = build_parametrization(z, problem.R, problem.z0, problem.T);
    PiecewisePath ell_hat = build_load_hat(par.t_hat, par.z_hat, problem.load, problem.energy);
    ParametrizedTuple tuple(par.S, par.t_hat, par.z_hat, std::move(ell_hat));

    CheckReport relaxed = check_relaxed(tuple, problem, tol);
    if (!relaxed.overall()) {
        throw SolverError("constructed tuple is not a relaxed solution:\n" + relaxed.to_table());
    }

    std::vector<ProjectionWitness> witness;
    const auto& s_bp = tuple.t_hat.breakpoints();
    const auto& t_nodes = tuple.t_hat.path().nodes();
    for (double t : z.breakpoints()) {
        const Vec target = z.value(t);
        ProjectionWitness best{t, 0.0, std::numeric_limits<double>::infinity()};
        for (std::size_t k = 0; k < s_bp.size(); ++k) {
            if (t_nodes[k].value(0) == t) {
                const double err = (tuple.z_hat(s_bp[k]) - target).norm();
                if (err < best.error) {
                    best = {t, s_bp[k], err};
                }
            }
        }
        if (!std::isfinite(best.error)) {
            for (std::size_t k = 0; k + 1 < s_bp.size(); ++k) {
                const double ta = t_nodes[k].value(0);
                const double tb = t_nodes[k + 1].value(0);
                if (ta < t && t < tb) {
                    const double s = s_bp[k] + (t - ta) / (tb - ta) * (s_bp[k + 1] - s_bp[k]);
                    best = {t, s, (tuple.z_hat(s) - target).norm() + std::abs(tuple.t_hat.path().scalar_value(s) - t)};
                    break;
                }
            }
        }
        witness.push_back(best);
    }

    return ConstructionResult{std::move(tuple), std::move(par.decomposition), std::move(witness), std::move(local),
                              std::move(relaxed)};
}

} // namespace rislab
