#pragma once

#include "rislab/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rislab {

enum class DissipationKind { ScaledNorm, WeightedL1, Polyhedral };

std::string to_string(DissipationKind kind);

/// A positively 1-homogeneous, convex, coercive dissipation potential R on R^d.
///
/// Three families are supported, each described through its elastic region
/// K = ∂R(0), so that R is the support function of K:
///   - scaled_norm(α):      K is the Euclidean ball of radius α, R(v) = α‖v‖;
///   - weighted_l1(w):      K is the box Π[-w_i, w_i], R(v) = Σ w_i |v_i|;
///   - polyhedral({g_i}):   K = conv{g_i}, R(v) = max_i ⟨g_i, v⟩.
///
/// The norm-equivalence constants c, C with c‖v‖ ≤ R(v) ≤ C‖v‖ are computed
/// exactly at construction. Instances are immutable.
class Dissipation {
  public:
    static Dissipation scaled_norm(int dim, double alpha);
    static Dissipation weighted_l1(Vec weights);
    /// `vertices` spans K; the origin must lie in the interior of their hull.
    static Dissipation polyhedral(std::vector<Vec> vertices);

    DissipationKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double alpha() const { return alpha_; }
    const Vec& weights() const { return weights_; }
    const std::vector<Vec>& vertices() const { return vertices_; }

    double lower_constant() const { return c_; }
    double upper_constant() const { return C_; }

    /// Only the scaled Euclidean norm is symmetric in the sense R(x) = R(y) iff ‖x‖ = ‖y‖.
    bool symmetric() const { return kind_ == DissipationKind::ScaledNorm; }

    double operator()(const Vec& v) const { return eval(v); }
    double eval(const Vec& v) const;

    /// Euclidean projection onto K = ∂R(0).
    Vec project_subdiff0(const Vec& w) const;
    double dist_to_subdiff0(const Vec& w) const;

    /// Label of the face of K carrying the projection of w, 0 when w ∈ K.
    /// Along a smooth curve, dist_to_subdiff0 is smooth while the label is constant.
    std::uint64_t projection_face(const Vec& w) const;

    /// Distance from w to the set ∂R(v) (the face of K exposed by v).
    double dist_to_subdiff(const Vec& v, const Vec& w) const;

    /// prox of λR: argmin_x λR(x) + ½‖x - v‖² = v - proj_{λK}(v).
    Vec prox(const Vec& v, double lambda) const;

    std::string describe() const;

  private:
    Dissipation() = default;
    void check_dim(const Vec& v) const;

    DissipationKind kind_ = DissipationKind::ScaledNorm;
    int dim_ = 0;
    double alpha_ = 0.0;
    Vec weights_;
    std::vector<Vec> vertices_;
    double c_ = 0.0;
    double C_ = 0.0;
};

struct ContactPotentialValue {
    double r_part = 0.0;
    double dist_part = 0.0;
    double total = 0.0;
};

/// 𝔭(v, w) = R(v) + ‖v‖ dist(w, ∂R(0)).
ContactPotentialValue contact_potential(const Dissipation& R, const Vec& v, const Vec& w);

inline double dist_to_subdiff0(const Dissipation& R, const Vec& w) { return R.dist_to_subdiff0(w); }
inline double eval_R(const Dissipation& R, const Vec& v) { return R.eval(v); }

namespace polytope {

/// Projection of `w` onto conv(points) by enumerating affinely independent
/// vertex subsets (exact up to rounding, intended for d ≤ 3).
Vec project_by_enumeration(const std::vector<Vec>& points, const Vec& w);

/// Projection of `w` onto conv(points) by Wolfe's minimum-norm-point method.
/// If `support` is given it receives the indices of the points spanning the
/// projection, or is cleared when w lies in the hull.
Vec project_by_wolfe(const std::vector<Vec>& points, const Vec& w, double tol = 1e-12,
                     std::vector<int>* support_out = nullptr);

/// Radius of the largest origin-centred ball inside conv(points), i.e.
/// min over unit v of max_i ⟨p_i, v⟩. Zero if the origin is not interior.
double inner_radius(const std::vector<Vec>& points);

} // namespace polytope

} // namespace rislab
