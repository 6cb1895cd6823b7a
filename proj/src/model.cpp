#include "rislab/model.hpp"

#include "rislab/log.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace rislab {

Nonlinearity Nonlinearity::zero(int dim) {
    Nonlinearity f;
    f.name = "zero";
    f.value = [](const Vec&) { return 0.0; };
    f.gradient = [dim](const Vec&) { return Vec::Zero(dim).eval(); };
    f.hessian = [dim](const Vec&) { return Mat::Zero(dim, dim).eval(); };
    f.affine_gradient = true;
    return f;
}

Nonlinearity Nonlinearity::linear(Vec b) {
    const auto dim = b.size();
    Nonlinearity f;
    f.name = "linear";
    f.value = [b](const Vec& z) { return b.dot(z); };
    f.gradient = [b](const Vec&) { return b; };
    f.hessian = [dim](const Vec&) { return Mat::Zero(dim, dim).eval(); };
    f.affine_gradient = true;
    return f;
}

Nonlinearity Nonlinearity::double_well(int dim, double kappa) {
    if (!(kappa >= 0.0)) {
        throw PreconditionError("double-well stiffness must be nonnegative");
    }
    Nonlinearity f;
    f.name = "double_well";
    f.value = [kappa](const Vec& z) {
        const double r = z.squaredNorm() - 1.0;
        return 0.25 * kappa * r * r;
    };
    f.gradient = [kappa](const Vec& z) { return (kappa * (z.squaredNorm() - 1.0) * z).eval(); };
    f.hessian = [kappa, dim](const Vec& z) {
        Mat h = kappa * (z.squaredNorm() - 1.0) * Mat::Identity(dim, dim) + 2.0 * kappa * z * z.transpose();
        return h;
    };
    return f;
}

Nonlinearity Nonlinearity::polynomial(int dim, std::vector<double> c) {
    if (c.empty()) {
        return zero(dim);
    }
    Nonlinearity f;
    f.name = "polynomial";
    auto eval = [c](double x) {
        double p = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            p = p * x + *it;
        }
        return p;
    };
    auto deriv = [c](double x) {
        double p = 0.0;
        for (std::size_t k = c.size(); k-- > 1;) {
            p = p * x + static_cast<double>(k) * c[k];
        }
        return p;
    };
    auto deriv2 = [c](double x) {
        double p = 0.0;
        for (std::size_t k = c.size(); k-- > 2;) {
            p = p * x + static_cast<double>(k * (k - 1)) * c[k];
        }
        return p;
    };
    f.value = [eval](const Vec& z) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            s += eval(z(i));
        }
        return s;
    };
    f.gradient = [deriv](const Vec& z) {
        Vec g(z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            g(i) = deriv(z(i));
        }
        return g;
    };
    f.hessian = [deriv2](const Vec& z) {
        Mat h = Mat::Zero(z.size(), z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            h(i, i) = deriv2(z(i));
        }
        return h;
    };
    f.affine_gradient = c.size() <= 2;
    return f;
}

EnergyModel::EnergyModel(Mat A, Nonlinearity F, std::optional<double> growth_q)
    : A_(std::move(A)), F_(std::move(F)), growth_q_(growth_q) {
    if (A_.rows() == 0 || A_.rows() != A_.cols()) {
        throw PreconditionError("A must be a nonempty square matrix");
    }
    if (!A_.allFinite()) {
        throw PreconditionError("A must have finite entries");
    }
    const double scale = std::max(1.0, A_.cwiseAbs().maxCoeff());
    if ((A_ - A_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw PreconditionError("A must be symmetric");
    }
    Eigen::LLT<Mat> llt(A_);
    if (llt.info() != Eigen::Success) {
        throw PreconditionError("A must be positive definite");
    }
    if (!F_.value || !F_.gradient) {
        throw PreconditionError("F needs value and gradient callbacks");
    }
    if (growth_q_ && *growth_q_ < 1.0) {
        throw PreconditionError("growth exponent must be at least 1");
    }
    const double diag = A_(0, 0);
    if ((A_ - diag * Mat::Identity(A_.rows(), A_.cols())).cwiseAbs().maxCoeff() == 0.0) {
        scalar_A_ = diag;
    }

    // F is only meant to be bounded below by zero; a negative sample is reported, not rejected.
    std::mt19937 gen(7);
    std::normal_distribution<double> normal;
    for (int k = 0; k < 16; ++k) {
        Vec z(dim());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            z(i) = 2.0 * normal(gen);
        }
        if (F_.value(z) < 0.0) {
            warn("nonlinearity '" + F_.name + "' takes negative values; continuing");
            break;
        }
    }
}

double EnergyModel::energy(const Vec& z) const { return 0.5 * z.dot(A_ * z) + F_.value(z); }

Vec EnergyModel::gradient(const Vec& z) const { return A_ * z + F_.gradient(z); }

std::optional<Mat> EnergyModel::hessian(const Vec& z) const {
    if (!F_.hessian) {
        return std::nullopt;
    }
    return A_ + (*F_.hessian)(z);
}

StabilityCheck check_initial_stability(const Dissipation& R, const EnergyModel& E, const Vec& z0, const Vec& ell0,
                                       double tol) {
    if (z0.size() != E.dim() || ell0.size() != E.dim() || R.dim() != E.dim()) {
        throw PreconditionError("initial data dimensions do not match the energy");
    }
    StabilityCheck out;
    out.residual = R.dist_to_subdiff0(ell0 - E.gradient(z0));
    out.stable = out.residual <= tol;
    return out;
}

RISProblem::RISProblem(EnergyModel energy_, Dissipation R_, PiecewisePath load_, Vec z0_, Vec ell0_, double T_,
                       double stability_tol)
    : energy(std::move(energy_)), R(std::move(R_)), load(std::move(load_)), z0(std::move(z0_)),
      ell0(std::move(ell0_)), T(T_) {
    if (!(T > 0.0)) {
        throw PreconditionError("final time must be positive");
    }
    if (R.dim() != energy.dim() || load.dim() != energy.dim()) {
        throw PreconditionError("dissipation, load and energy dimensions differ");
    }
    if (load.a() != 0.0 || load.b() != T) {
        std::ostringstream os;
        os << "load domain [" << load.a() << ", " << load.b() << "] differs from [0, " << T << "]";
        throw PreconditionError(os.str());
    }
    const auto st = check_initial_stability(R, energy, z0, ell0, stability_tol);
    if (!st.stable) {
        std::ostringstream os;
        os << "initial state is not stable: dist(-DE(z0) + l0, dR(0)) = " << st.residual;
        throw PreconditionError(os.str());
    }
}

RISProblem RISProblem::with_load(PiecewisePath new_load) const {
    RISProblem copy = *this;
    if (new_load.dim() != dim() || new_load.a() != 0.0 || new_load.b() != T) {
        throw PreconditionError("replacement load must live on [0, T] with the same dimension");
    }
    copy.load = std::move(new_load);
    return copy;
}

double energy_I(const RISProblem& problem, double t, const Vec& z) {
    return problem.energy.energy(z) - problem.load.value(t).dot(z);
}

Vec grad_I(const RISProblem& problem, double t, const Vec& z) {
    return problem.energy.gradient(z) - problem.load.value(t);
}

Vec grad_I_hat(const EnergyModel& energy, const PiecewisePath& ell_hat, double s, const Vec& z) {
    return energy.gradient(z) - ell_hat.value(s);
}

} // namespace rislab
