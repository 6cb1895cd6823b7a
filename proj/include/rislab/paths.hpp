#pragma once

#include "rislab/convex_kernel.hpp"
#include "rislab/types.hpp"

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace rislab {

/// One-sided limits and the point value of a path at a breakpoint.
struct Node {
    Vec left;
    Vec value;
    Vec right;

    static Node continuous(Vec v) { return Node{v, v, std::move(v)}; }
};

/// Piecewise-affine map [a, b] -> R^d with finitely many breakpoints.
///
/// Between consecutive breakpoints t_k < t_{k+1} the path is the affine
/// interpolant of nodes[k].right and nodes[k+1].left. At a breakpoint the
/// path takes nodes[k].value, which may differ from either one-sided limit.
/// The left limit at a and the right limit at b always equal the point value.
class PiecewisePath {
  public:
    PiecewisePath(std::vector<double> breakpoints, std::vector<Node> nodes);

    static PiecewisePath constant(double a, double b, const Vec& value);
    /// Continuous interpolant through (times[k], values[k]).
    static PiecewisePath interpolate(std::vector<double> times, const std::vector<Vec>& values);
    static PiecewisePath scalar(std::vector<double> times, const std::vector<double>& values);

    int dim() const { return dim_; }
    double a() const { return breakpoints_.front(); }
    double b() const { return breakpoints_.back(); }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t segment_count() const { return breakpoints_.size() - 1; }

    bool contains(double t) const { return t >= a() && t <= b(); }

    Vec operator()(double t) const { return value(t); }
    Vec value(double t) const;
    Vec left_limit(double t) const;
    Vec right_limit(double t) const;

    /// Constant derivative on segment k.
    Vec slope(std::size_t k) const;
    double segment_length(std::size_t k) const { return breakpoints_[k + 1] - breakpoints_[k]; }

    /// Index of the segment whose closed interval contains t; breakpoints
    /// resolve to the segment on their right (the last one for t = b).
    std::size_t segment_index(double t) const;
    /// Index of t in the breakpoint list, if it is one.
    std::optional<std::size_t> breakpoint_index(double t) const;

    /// Breakpoints where the node triple is not constant.
    std::vector<double> jump_times(double tol = 0.0) const;
    bool is_continuous(double tol = 0.0) const;

    /// Same function, with the extra times (inside the domain) inserted as breakpoints.
    PiecewisePath refined(std::span<const double> extra) const;

    /// Scalar paths only: component 0 as a double.
    double scalar_value(double t) const { return value(t)(0); }

  private:
    std::vector<double> breakpoints_;
    std::vector<Node> nodes_;
    int dim_ = 0;
};

/// Continuous path with a recorded Lipschitz bound.
class LipschitzPath {
  public:
    /// Computes the bound as the largest segment slope when none is given.
    explicit LipschitzPath(PiecewisePath path, std::optional<double> lipschitz_bound = std::nullopt);

    const PiecewisePath& path() const { return path_; }
    double lipschitz_bound() const { return bound_; }
    int dim() const { return path_.dim(); }
    double a() const { return path_.a(); }
    double b() const { return path_.b(); }
    Vec operator()(double t) const { return path_.value(t); }
    const std::vector<double>& breakpoints() const { return path_.breakpoints(); }

    bool nondecreasing_scalar() const;

  private:
    PiecewisePath path_;
    double bound_ = 0.0;
};

/// Exact supremum over partitions of Σ cost(f(t_k) - f(t_{k-1})) on [t1, t2]
/// for a convex, positively 1-homogeneous `cost`.
double variation(const PiecewisePath& f, double t1, double t2, const std::function<double(const Vec&)>& cost);

double total_variation(const PiecewisePath& f, double t1, double t2);
inline double total_variation(const PiecewisePath& f) { return total_variation(f, f.a(), f.b()); }

/// Diss_R(z; [t1, t2]) for the pointwise representative z.
double dissipation(const Dissipation& R, const PiecewisePath& z, double t1, double t2);

/// Kurzweil-Stieltjes integral of z against dℓ over [t1, t2].
///
/// Jump convention: an interior jump point t of ℓ contributes
/// ⟨z(t), ℓ(t+) - ℓ(t-)⟩; the endpoints contribute ⟨z(t1), ℓ(t1+) - ℓ(t1)⟩
/// and ⟨z(t2), ℓ(t2) - ℓ(t2-)⟩. Altering ℓ at a single interior point
/// therefore leaves the integral unchanged.
double kurzweil_stieltjes(const PiecewisePath& z, const PiecewisePath& ell, double t1, double t2);

/// Exact representation of f∘t̂ for a nondecreasing continuous scalar t̂.
/// On plateaus of t̂ at level t* the composition is the point value f(t*).
PiecewisePath compose_monotone(const PiecewisePath& f, const LipschitzPath& t_hat);

/// ∫_a^b ‖f(t) - g(t)‖ dt, exact per segment.
double l1_distance(const PiecewisePath& f, const PiecewisePath& g);

/// Sorted union of breakpoints of all paths, restricted to [lo, hi].
std::vector<double> merged_breakpoints(std::span<const PiecewisePath* const> paths, double lo, double hi);

/// Sup over all breakpoints (and their one-sided limits) of ‖f - g‖ on the
/// common domain; exact for piecewise-affine paths.
double sup_distance(const PiecewisePath& f, const PiecewisePath& g);

struct ConvergenceTolerances {
    double pointwise = 1e-9;
    double l1 = 1e-2;
    double variation = 1e-6;
    std::size_t tail = 3;
};

enum class ConvergenceMode { None, WeakStarOnly, Intermediate };

std::string to_string(ConvergenceMode mode);

struct ConvergenceEntry {
    double sup_error = 0.0;   // on sample grid plus every breakpoint
    double l1_distance = 0.0;
    double variation = 0.0;
    double variation_gap = 0.0;
};

struct ConvergenceDiagnostics {
    std::vector<ConvergenceEntry> entries;
    double limit_variation = 0.0;
    bool pointwise = false;
    bool weak_star = false;
    bool intermediate = false;

    ConvergenceMode mode() const {
        if (intermediate) {
            return ConvergenceMode::Intermediate;
        }
        return weak_star ? ConvergenceMode::WeakStarOnly : ConvergenceMode::None;
    }
};

/// Compares a finite sequence against a candidate limit and classifies the
/// tail: pointwise (last member agrees with the limit at every sample),
/// weak*-consistent (L1 distances nonincreasing over the tail and below
/// tolerance), intermediate-consistent (weak* and variations converge).
ConvergenceDiagnostics convergence_diagnostics(std::span<const PiecewisePath> seq, const PiecewisePath& limit,
                                               std::span<const double> sample_grid,
                                               const ConvergenceTolerances& tol = {});

/// Builds node triples incrementally; consecutive times must increase.
class PathBuilder {
  public:
    PathBuilder& point(double t, const Vec& v) { return jump(t, v, v, v); }
    PathBuilder& point(double t, double v) { return point(t, scalar_vec(v)); }
    PathBuilder& jump(double t, const Vec& left, const Vec& value, const Vec& right);
    PathBuilder& jump(double t, double left, double value, double right) {
        return jump(t, scalar_vec(left), scalar_vec(value), scalar_vec(right));
    }
    PiecewisePath build() const;

  private:
    std::vector<double> times_;
    std::vector<Node> nodes_;
};

} // namespace rislab
