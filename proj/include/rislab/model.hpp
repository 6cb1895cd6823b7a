#pragma once

#include "rislab/convex_kernel.hpp"
#include "rislab/paths.hpp"
#include "rislab/types.hpp"

#include <functional>
#include <optional>
#include <string>

namespace rislab {

/// Smooth part F of the stored energy, given through callbacks.
struct Nonlinearity {
    std::string name;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::optional<std::function<Mat(const Vec&)>> hessian;
    /// True when the gradient is affine in z (zero and linear F).
    bool affine_gradient = false;

    static Nonlinearity zero(int dim);
    /// F(z) = ⟨b, z⟩.
    static Nonlinearity linear(Vec b);
    /// F(z) = κ/4 (‖z‖² - 1)².
    static Nonlinearity double_well(int dim, double kappa);
    /// Separable F(z) = Σ_i Σ_k c_k z_i^k with coefficients c_0, c_1, ...
    static Nonlinearity polynomial(int dim, std::vector<double> coefficients);
};

/// E(z) = ½⟨Az, z⟩ + F(z) with A symmetric positive definite.
class EnergyModel {
  public:
    EnergyModel(Mat A, Nonlinearity F, std::optional<double> growth_q = std::nullopt);

    int dim() const { return static_cast<int>(A_.rows()); }
    const Mat& A() const { return A_; }
    const Nonlinearity& F() const { return F_; }
    std::optional<double> growth_q() const { return growth_q_; }
    /// A is a multiple of the identity (used for closed-form steps).
    std::optional<double> scalar_A() const { return scalar_A_; }

    double energy(const Vec& z) const;
    Vec gradient(const Vec& z) const;
    std::optional<Mat> hessian(const Vec& z) const;

  private:
    Mat A_;
    Nonlinearity F_;
    std::optional<double> growth_q_;
    std::optional<double> scalar_A_;
};

struct StabilityCheck {
    bool stable = false;
    double residual = 0.0;
};

/// dist(-DE(z0) + ℓ0, ∂R(0)) and whether it is within `tol`.
StabilityCheck check_initial_stability(const Dissipation& R, const EnergyModel& E, const Vec& z0, const Vec& ell0,
                                       double tol = 1e-10);

/// The rate-independent system 0 ∈ ∂R(ż) + D_zI(t, z) on [0, T].
struct RISProblem {
    EnergyModel energy;
    Dissipation R;
    PiecewisePath load;
    Vec z0;
    Vec ell0;
    double T;

    /// Validates dimensions, the load domain [0, T] and initial stability.
    RISProblem(EnergyModel energy, Dissipation R, PiecewisePath load, Vec z0, Vec ell0, double T,
               double stability_tol = 1e-10);

    int dim() const { return energy.dim(); }
    RISProblem with_load(PiecewisePath new_load) const;
};

/// I(t, z) = E(z) - ⟨ℓ(t), z⟩ with the point value of ℓ.
double energy_I(const RISProblem& problem, double t, const Vec& z);
/// D_zI(t, z) = Az + DF(z) - ℓ(t).
Vec grad_I(const RISProblem& problem, double t, const Vec& z);
/// D_zÎ(s, z) = Az + DF(z) - ℓ̂(s).
Vec grad_I_hat(const EnergyModel& energy, const PiecewisePath& ell_hat, double s, const Vec& z);

} // namespace rislab
