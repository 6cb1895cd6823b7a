#include "rislab/viscous_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rislab {
namespace {

std::vector<double> build_grid(const PiecewisePath& load, double T, double step) {
    const auto n = static_cast<std::size_t>(std::ceil(T / step - 1e-9));
    std::vector<double> grid;
    grid.reserve(n + load.breakpoints().size() + 1);
    for (std::size_t k = 0; k < n; ++k) {
        grid.push_back(static_cast<double>(k) * T / static_cast<double>(n));
    }
    grid.push_back(T);
    for (double t : load.breakpoints()) {
        grid.push_back(t);
    }
    std::sort(grid.begin(), grid.end());
    // Drop nodes that would create steps far shorter than the nominal one.
    std::vector<double> out{grid.front()};
    const double min_gap = 1e-9 * step;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] - out.back() > min_gap) {
            out.push_back(grid[i]);
        } else if (load.breakpoint_index(grid[i]) && !load.breakpoint_index(out.back()) && out.size() > 1) {
            out.back() = grid[i];
        }
    }
    if (out.back() != T) {
        out.back() = T;
    }
    return out;
}

struct StepResult {
    Vec delta;
    double residual;
};

// Solves 0 ∈ ∂R(δ) + Qδ + b with Q = mI + A.
StepResult incremental_step(const Dissipation& R, const Mat& Q, std::optional<double> q_scalar, double lipschitz,
                            const Vec& b, const Vec& warm, const ViscousOptions& opt) {
    if (q_scalar) {
        const Vec minus_b = -b;
        Vec delta = (minus_b - R.project_subdiff0(minus_b)) / *q_scalar;
        return {std::move(delta), 0.0};
    }
    const double L = lipschitz;
    Vec x = warm;
    Vec y = x;
    double theta = 1.0;
    double residual = 0.0;
    for (int it = 0; it < opt.max_inner_iterations; ++it) {
        const Vec x_next = R.prox(y - (Q * y + b) / L, 1.0 / L);
        const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
        y = x_next + ((theta - 1.0) / theta_next) * (x_next - x);
        x = x_next;
        theta = theta_next;
        if (it % 8 == 7 || it + 1 == opt.max_inner_iterations) {
            residual = L * (x - R.prox(x - (Q * x + b) / L, 1.0 / L)).norm();
            if (residual <= opt.inner_tolerance) {
                return {x, residual};
            }
        }
    }
    std::ostringstream os;
    os << "incremental problem did not converge: residual " << residual << " after " << opt.max_inner_iterations
       << " iterations";
    throw SolverError(os.str());
}

} // namespace

PiecewisePath ViscousTrajectory::as_path() const { return PiecewisePath::interpolate(time_grid, states); }

ViscousTrajectory solve_viscous(const RISProblem& problem, double epsilon, double step, const ViscousOptions& options) {
    if (!(epsilon > 0.0) || !(step > 0.0)) {
        throw PreconditionError("epsilon and step must be positive");
    }
    const auto& E = problem.energy;
    const auto& R = problem.R;
    const int d = problem.dim();

    ViscousTrajectory traj;
    traj.epsilon = epsilon;
    traj.time_grid = build_grid(problem.load, problem.T, step);
    traj.states.reserve(traj.time_grid.size());
    traj.states.push_back(problem.z0);

    Vec warm = Vec::Zero(d);
    for (std::size_t k = 0; k + 1 < traj.time_grid.size(); ++k) {
        const double t_next = traj.time_grid[k + 1];
        const double h = t_next - traj.time_grid[k];
        const double m = epsilon / h;
        const Vec& z = traj.states.back();
        const Vec ell_next = problem.load.right_limit(t_next);
        const Vec b = E.A() * z + E.F().gradient(z) - ell_next;

        const Mat Q = m * Mat::Identity(d, d) + E.A();
        std::optional<double> q_scalar;
        if (E.scalar_A()) {
            q_scalar = m + *E.scalar_A();
        }
        double L = 0.0;
        if (!q_scalar) {
            Eigen::SelfAdjointEigenSolver<Mat> es(Q, Eigen::EigenvaluesOnly);
            L = es.eigenvalues().maxCoeff();
        }
        auto res = incremental_step(R, Q, q_scalar, L, b, warm, options);
        warm = res.delta;

        Vec z_next = z + res.delta;
        traj.step_residuals.push_back(res.residual);
        traj.energy_residuals.push_back(E.energy(z_next) + R.eval(res.delta) + m * res.delta.squaredNorm() -
                                        E.energy(z) - ell_next.dot(res.delta));
        traj.rates.push_back(res.delta / h);
        traj.states.push_back(std::move(z_next));
    }
    return traj;
}

ParametrizedTuple reparametrize(const ViscousTrajectory& traj, const RISProblem& problem) {
    const auto& ts = traj.time_grid;
    if (ts.size() < 2 || traj.states.size() != ts.size() || traj.rates.size() + 1 != ts.size()) {
        throw PreconditionError("malformed viscous trajectory");
    }
    const auto& E = problem.energy;
    std::vector<double> s(ts.size(), 0.0);
    std::vector<Vec> t_vals;
    t_vals.reserve(ts.size());
    t_vals.push_back(scalar_vec(ts.front()));
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        const double h = ts[k + 1] - ts[k];
        const Vec& v = traj.rates[k];
        const Vec w0 = problem.load.right_limit(ts[k]) - E.gradient(traj.states[k]);
        const Vec w1 = problem.load.left_limit(ts[k + 1]) - E.gradient(traj.states[k + 1]);
        const double p = 0.5 * (contact_potential(problem.R, v, w0).total + contact_potential(problem.R, v, w1).total);
        s[k + 1] = s[k] + h * (1.0 + p);
        if (!(s[k + 1] > s[k])) {
            throw std::logic_error("arc length failed to increase");
        }
        t_vals.push_back(scalar_vec(ts[k + 1]));
    }
    LipschitzPath t_hat(PiecewisePath::interpolate(s, t_vals));
    LipschitzPath z_hat(PiecewisePath::interpolate(s, traj.states));
    PiecewisePath ell_hat = compose_monotone(problem.load, t_hat);
    const double S = s.back();
    return ParametrizedTuple(S, std::move(t_hat), std::move(z_hat), std::move(ell_hat));
}

} // namespace rislab
