#pragma once

#include "rislab/checkers.hpp"
#include "rislab/model.hpp"
#include "rislab/tuple.hpp"

#include <vector>

namespace rislab {

struct JumpTriple {
    double t = 0.0;
    Vec left;
    Vec value;
    Vec right;
};

/// Jump structure of a physical-time path and the arc-length map
/// s(t) = t + Diss_0(z; [0, t]).
struct JumpDecomposition {
    std::vector<JumpTriple> jumps;   // jump times in (0, T]
    bool initial_jump = false;       // z(0+) ≠ z0
    double initial_length = 0.0;     // R(z(0+) - z0), the length of I_0
    /// Node k carries (s(t-), s(t), s(t+)) at breakpoint t of z.
    PiecewisePath s_map;

    struct Interval {
        double lo;
        double hi;
    };
    /// I_0 (possibly degenerate) followed by I_n = [s(t_n-), s(t_n+)].
    std::vector<Interval> intervals() const;
};

struct Parametrization {
    JumpDecomposition decomposition;
    double S = 0.0;
    LipschitzPath t_hat;
    LipschitzPath z_hat;
};

/// Diss_0(z; [0, t]) = R(z(0+) - z0) + Diss_R(z; [0+, t]); zero at t = 0.
double diss0(const Dissipation& R, const PiecewisePath& z, const Vec& z0, double t);

/// Inverse of s with constant continuation over every jump interval, and ẑ
/// interpolating z(t-), z(t), z(t+) linearly across each jump. Only scaled
/// Euclidean norms are accepted for R.
Parametrization build_parametrization(const PiecewisePath& z, const Dissipation& R, const Vec& z0, double T);

/// ℓ∘t̂ where t̂ increases; Aẑ + DF(ẑ) + ẑ'/‖ẑ'‖² on the open pieces where t̂
/// is flat. Nonlinear DF is resolved on 64 sub-pieces per flat piece.
PiecewisePath build_load_hat(const LipschitzPath& t_hat, const LipschitzPath& z_hat, const PiecewisePath& ell,
                             const EnergyModel& energy);

struct ProjectionWitness {
    double t = 0.0;
    double s = 0.0;
    double error = 0.0;   // ‖ẑ(s) - z(t)‖ + |t̂(s) - t|
};

struct ConstructionResult {
    ParametrizedTuple tuple;
    JumpDecomposition decomposition;
    std::vector<ProjectionWitness> projection_witness;
    CheckReport local_report;
    CheckReport relaxed_report;

    double worst_projection_error() const;
};

/// Validates the hypotheses (local solution, symmetric R, finitely many
/// jumps), builds the tuple and certifies it with check_relaxed. Throws
/// PreconditionError on a failed hypothesis and SolverError when the
/// resulting tuple is not relaxed within `tol`.
ConstructionResult construct_relaxed_from_local(const PiecewisePath& z, const RISProblem& problem,
                                                double tol = kDefaultCheckTolerance);

} // namespace rislab
