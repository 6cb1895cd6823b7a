#pragma once

#include "rislab/model.hpp"
#include "rislab/tuple.hpp"

#include <vector>

namespace rislab {

struct ViscousOptions {
    double inner_tolerance = 1e-10;
    int max_inner_iterations = 200000;
};

/// Discrete solution of 0 ∈ ∂R(ż) + εż + D_zI(t, z) on a time grid.
struct ViscousTrajectory {
    double epsilon = 0.0;
    std::vector<double> time_grid;
    std::vector<Vec> states;
    /// Difference quotient on step k, i.e. (z_{k+1} - z_k) / h_k.
    std::vector<Vec> rates;
    /// Optimality residual of each incremental problem.
    std::vector<double> step_residuals;
    /// E(z_{k+1}) + R(δ) + (ε/h)‖δ‖² - E(z_k) - ⟨ℓ_{k+1}, δ⟩ per step.
    std::vector<double> energy_residuals;

    PiecewisePath as_path() const;
};

/// Semi-implicit incremental scheme with A implicit and DF explicit; load
/// breakpoints are added to the uniform grid and a step ending at a jump of
/// ℓ uses ℓ(t+).
ViscousTrajectory solve_viscous(const RISProblem& problem, double epsilon, double step,
                                const ViscousOptions& options = {});

/// Arc-length reparametrization with s(t) = t + ∫𝔭(ż, -D_zI) by the
/// trapezoidal rule on each step.
ParametrizedTuple reparametrize(const ViscousTrajectory& traj, const RISProblem& problem);

} // namespace rislab
