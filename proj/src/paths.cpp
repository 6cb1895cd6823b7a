#include "rislab/paths.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rislab {
namespace {

void require_same_dim(const Vec& a, int dim, const char* what) {
    if (a.size() != dim) {
        std::ostringstream os;
        os << what << " has dimension " << a.size() << ", expected " << dim;
        throw PreconditionError(os.str());
    }
}

void require_interval(const PiecewisePath& f, double t1, double t2) {
    if (!(t1 <= t2)) {
        throw PreconditionError("interval endpoints out of order");
    }
    if (!f.contains(t1) || !f.contains(t2)) {
        std::ostringstream os;
        os << "interval [" << t1 << ", " << t2 << "] is outside the path domain [" << f.a() << ", " << f.b() << "]";
        throw DomainError(os.str());
    }
}

// ∫_0^1 ‖d0 + x w‖ dx in closed form.
double integral_norm_affine(const Vec& d0, const Vec& w) {
    const double A = w.squaredNorm();
    const double C = d0.squaredNorm();
    if (A <= 1e-300 || A <= 1e-28 * C) {
        return 0.5 * (d0.norm() + (d0 + w).norm());
    }
    const double B = d0.dot(w);
    const double shift = B / A;
    const double m = std::max(C / A - shift * shift, 0.0);
    auto antiderivative = [m](double y) {
        if (m <= 0.0) {
            return 0.5 * y * std::abs(y);
        }
        return 0.5 * (y * std::sqrt(y * y + m) + m * std::asinh(y / std::sqrt(m)));
    };
    return std::sqrt(A) * (antiderivative(1.0 + shift) - antiderivative(shift));
}

} // namespace

PiecewisePath::PiecewisePath(std::vector<double> breakpoints, std::vector<Node> nodes)
    : breakpoints_(std::move(breakpoints)), nodes_(std::move(nodes)) {
    if (breakpoints_.size() < 2) {
        throw PreconditionError("a path needs at least two breakpoints");
    }
    if (breakpoints_.size() != nodes_.size()) {
        throw PreconditionError("breakpoint and node counts differ");
    }
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        if (!std::isfinite(breakpoints_[k])) {
            throw PreconditionError("breakpoints must be finite");
        }
        if (k > 0 && !(breakpoints_[k] > breakpoints_[k - 1])) {
            throw PreconditionError("breakpoints must be strictly increasing");
        }
    }
    dim_ = static_cast<int>(nodes_.front().value.size());
    if (dim_ <= 0) {
        throw PreconditionError("path dimension must be positive");
    }
    for (const auto& n : nodes_) {
        require_same_dim(n.left, dim_, "left limit");
        require_same_dim(n.value, dim_, "point value");
        require_same_dim(n.right, dim_, "right limit");
        if (!n.left.allFinite() || !n.value.allFinite() || !n.right.allFinite()) {
            throw PreconditionError("node values must be finite");
        }
    }
    if (nodes_.front().left != nodes_.front().value) {
        throw PreconditionError("left limit at the initial point must equal the point value");
    }
    if (nodes_.back().right != nodes_.back().value) {
        throw PreconditionError("right limit at the final point must equal the point value");
    }
}

PiecewisePath PiecewisePath::constant(double a, double b, const Vec& value) {
    return PiecewisePath({a, b}, {Node::continuous(value), Node::continuous(value)});
}

PiecewisePath PiecewisePath::interpolate(std::vector<double> times, const std::vector<Vec>& values) {
    if (times.size() != values.size()) {
        throw PreconditionError("times and values differ in length");
    }
    std::vector<Node> nodes;
    nodes.reserve(values.size());
    for (const auto& v : values) {
        nodes.push_back(Node::continuous(v));
    }
    return PiecewisePath(std::move(times), std::move(nodes));
}

PiecewisePath PiecewisePath::scalar(std::vector<double> times, const std::vector<double>& values) {
    std::vector<Vec> vs;
    vs.reserve(values.size());
    for (double v : values) {
        vs.push_back(scalar_vec(v));
    }
    return interpolate(std::move(times), vs);
}

std::size_t PiecewisePath::segment_index(double t) const {
    if (!contains(t)) {
        std::ostringstream os;
        os << "t = " << t << " is outside the path domain [" << a() << ", " << b() << "]";
        throw DomainError(os.str());
    }
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    const auto idx = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
    return std::min(idx == 0 ? 0 : idx - 1, segment_count() - 1);
}

std::optional<std::size_t> PiecewisePath::breakpoint_index(double t) const {
    const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
    if (it != breakpoints_.end() && *it == t) {
        return static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
    }
    return std::nullopt;
}

Vec PiecewisePath::value(double t) const {
    const std::size_t k = segment_index(t);
    if (const auto bp = breakpoint_index(t)) {
        return nodes_[*bp].value;
    }
    const double theta = (t - breakpoints_[k]) / segment_length(k);
    return (1.0 - theta) * nodes_[k].right + theta * nodes_[k + 1].left;
}

Vec PiecewisePath::left_limit(double t) const {
    segment_index(t);
    if (const auto bp = breakpoint_index(t)) {
        return nodes_[*bp].left;
    }
    return value(t);
}

Vec PiecewisePath::right_limit(double t) const {
    segment_index(t);
    if (const auto bp = breakpoint_index(t)) {
        return nodes_[*bp].right;
    }
    return value(t);
}

Vec PiecewisePath::slope(std::size_t k) const {
    return (nodes_[k + 1].left - nodes_[k].right) / segment_length(k);
}

std::vector<double> PiecewisePath::jump_times(double tol) const {
    std::vector<double> out;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const auto& n = nodes_[k];
        if ((n.left - n.value).norm() > tol || (n.right - n.value).norm() > tol) {
            out.push_back(breakpoints_[k]);
        }
    }
    return out;
}

bool PiecewisePath::is_continuous(double tol) const { return jump_times(tol).empty(); }

PiecewisePath PiecewisePath::refined(std::span<const double> extra) const {
    std::vector<double> ts = breakpoints_;
    for (double t : extra) {
        if (t > a() && t < b()) {
            ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<Node> nodes;
    nodes.reserve(ts.size());
    for (double t : ts) {
        if (const auto bp = breakpoint_index(t)) {
            nodes.push_back(nodes_[*bp]);
        } else {
            nodes.push_back(Node::continuous(value(t)));
        }
    }
    return PiecewisePath(std::move(ts), std::move(nodes));
}

LipschitzPath::LipschitzPath(PiecewisePath path, std::optional<double> lipschitz_bound) : path_(std::move(path)) {
    if (!path_.is_continuous()) {
        throw PreconditionError("a Lipschitz path cannot have jumps");
    }
    double steepest = 0.0;
    for (std::size_t k = 0; k < path_.segment_count(); ++k) {
        steepest = std::max(steepest, path_.slope(k).norm());
    }
    if (lipschitz_bound) {
        if (*lipschitz_bound < steepest * (1.0 - 1e-12) - 1e-12) {
            throw PreconditionError("recorded Lipschitz bound is smaller than a segment slope");
        }
        bound_ = *lipschitz_bound;
    } else {
        bound_ = steepest;
    }
}

bool LipschitzPath::nondecreasing_scalar() const {
    if (dim() != 1) {
        return false;
    }
    const auto& nodes = path_.nodes();
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        if (nodes[k].value(0) < nodes[k - 1].value(0)) {
            return false;
        }
    }
    return true;
}

double variation(const PiecewisePath& f, double t1, double t2, const std::function<double(const Vec&)>& cost) {
    require_interval(f, t1, t2);
    if (t1 == t2) {
        return 0.0;
    }
    const auto& ts = f.breakpoints();
    double sum = cost(f.right_limit(t1) - f.value(t1));
    double u = t1;
    auto it = std::upper_bound(ts.begin(), ts.end(), t1);
    for (; it != ts.end() && *it < t2; ++it) {
        const double p = *it;
        sum += cost(f.left_limit(p) - f.right_limit(u));
        const Vec v = f.value(p);
        sum += cost(v - f.left_limit(p)) + cost(f.right_limit(p) - v);
        u = p;
    }
    sum += cost(f.left_limit(t2) - f.right_limit(u));
    sum += cost(f.value(t2) - f.left_limit(t2));
    return sum;
}

double total_variation(const PiecewisePath& f, double t1, double t2) {
    return variation(f, t1, t2, [](const Vec& v) { return v.norm(); });
}

double dissipation(const Dissipation& R, const PiecewisePath& z, double t1, double t2) {
    if (R.dim() != z.dim()) {
        throw PreconditionError("dissipation and path dimensions differ");
    }
    return variation(z, t1, t2, [&R](const Vec& v) { return R.eval(v); });
}

std::vector<double> merged_breakpoints(std::span<const PiecewisePath* const> paths, double lo, double hi) {
    std::vector<double> ts{lo, hi};
    for (const auto* p : paths) {
        for (double t : p->breakpoints()) {
            if (t > lo && t < hi) {
                ts.push_back(t);
            }
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

double kurzweil_stieltjes(const PiecewisePath& z, const PiecewisePath& ell, double t1, double t2) {
    require_interval(z, t1, t2);
    require_interval(ell, t1, t2);
    if (z.dim() != ell.dim()) {
        throw PreconditionError("integrand and integrator dimensions differ");
    }
    if (t1 == t2) {
        return 0.0;
    }
    const PiecewisePath* both[] = {&z, &ell};
    const auto pts = merged_breakpoints(both, t1, t2);

    double sum = z.value(t1).dot(ell.right_limit(t1) - ell.value(t1));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double u = pts[i];
        const double v = pts[i + 1];
        const Vec z_mean = 0.5 * (z.right_limit(u) + z.left_limit(v));
        sum += z_mean.dot(ell.left_limit(v) - ell.right_limit(u));
        if (i + 2 < pts.size()) {
            sum += z.value(v).dot(ell.right_limit(v) - ell.left_limit(v));
        }
    }
    sum += z.value(t2).dot(ell.value(t2) - ell.left_limit(t2));
    return sum;
}

PiecewisePath compose_monotone(const PiecewisePath& f, const LipschitzPath& t_hat) {
    if (t_hat.dim() != 1) {
        throw PreconditionError("reparametrization must be scalar");
    }
    const auto& s_bp = t_hat.breakpoints();
    const auto& t_nodes = t_hat.path().nodes();
    const double scale = std::max({1.0, std::abs(f.a()), std::abs(f.b())});
    const double slack = 1e-12 * scale;

    std::vector<double> levels(s_bp.size());
    for (std::size_t j = 0; j < s_bp.size(); ++j) {
        double tau = t_nodes[j].value(0);
        if (j > 0 && tau < levels[j - 1]) {
            if (tau < levels[j - 1] - slack) {
                throw PreconditionError("reparametrization is not nondecreasing");
            }
            tau = levels[j - 1];
        }
        if (tau < f.a() - slack || tau > f.b() + slack) {
            throw PreconditionError("reparametrization leaves the domain of the composed path");
        }
        levels[j] = std::clamp(tau, f.a(), f.b());
    }

    struct Point {
        double s;
        double t;
    };
    std::vector<Point> pts;
    pts.push_back({s_bp.front(), levels.front()});
    const auto& f_bp = f.breakpoints();
    for (std::size_t j = 0; j + 1 < s_bp.size(); ++j) {
        const double s0 = s_bp[j];
        const double s1 = s_bp[j + 1];
        const double t0 = levels[j];
        const double t1 = levels[j + 1];
        if (t1 > t0) {
            auto it = std::upper_bound(f_bp.begin(), f_bp.end(), t0);
            for (; it != f_bp.end() && *it < t1; ++it) {
                const double s = s0 + (*it - t0) / (t1 - t0) * (s1 - s0);
                if (s > pts.back().s && s < s1) {
                    pts.push_back({s, *it});
                }
            }
        }
        pts.push_back({s1, t1});
    }

    std::vector<double> ss;
    std::vector<Node> nodes;
    ss.reserve(pts.size());
    nodes.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double t = pts[i].t;
        Node n;
        n.value = f.value(t);
        const bool rising_left = i > 0 && pts[i - 1].t < t;
        const bool rising_right = i + 1 < pts.size() && pts[i + 1].t > t;
        n.left = i == 0 ? n.value : (rising_left ? f.left_limit(t) : n.value);
        n.right = i + 1 == pts.size() ? n.value : (rising_right ? f.right_limit(t) : n.value);
        ss.push_back(pts[i].s);
        nodes.push_back(std::move(n));
    }
    return PiecewisePath(std::move(ss), std::move(nodes));
}

double l1_distance(const PiecewisePath& f, const PiecewisePath& g) {
    if (f.a() != g.a() || f.b() != g.b()) {
        throw DomainError("L1 distance requires a common domain");
    }
    if (f.dim() != g.dim()) {
        throw PreconditionError("L1 distance requires equal dimensions");
    }
    const PiecewisePath* both[] = {&f, &g};
    const auto pts = merged_breakpoints(both, f.a(), f.b());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double u = pts[i];
        const double v = pts[i + 1];
        const Vec d0 = f.right_limit(u) - g.right_limit(u);
        const Vec d1 = f.left_limit(v) - g.left_limit(v);
        sum += (v - u) * integral_norm_affine(d0, d1 - d0);
    }
    return sum;
}

double sup_distance(const PiecewisePath& f, const PiecewisePath& g) {
    const double lo = std::max(f.a(), g.a());
    const double hi = std::min(f.b(), g.b());
    if (!(lo <= hi)) {
        throw DomainError("paths have disjoint domains");
    }
    const PiecewisePath* both[] = {&f, &g};
    double sup = 0.0;
    for (double t : merged_breakpoints(both, lo, hi)) {
        sup = std::max(sup, (f.value(t) - g.value(t)).norm());
        sup = std::max(sup, (f.left_limit(t) - g.left_limit(t)).norm());
        sup = std::max(sup, (f.right_limit(t) - g.right_limit(t)).norm());
    }
    return sup;
}

std::string to_string(ConvergenceMode mode) {
    switch (mode) {
    case ConvergenceMode::None:
        return "none";
    case ConvergenceMode::WeakStarOnly:
        return "weak*-only";
    case ConvergenceMode::Intermediate:
        return "intermediate";
    }
    return "unknown";
}

ConvergenceDiagnostics convergence_diagnostics(std::span<const PiecewisePath> seq, const PiecewisePath& limit,
                                               std::span<const double> sample_grid, const ConvergenceTolerances& tol) {
    if (seq.empty()) {
        throw PreconditionError("convergence diagnostics need a nonempty sequence");
    }
    for (const auto& f : seq) {
        if (f.a() != limit.a() || f.b() != limit.b()) {
            throw PreconditionError("sequence members must share the limit's domain");
        }
    }
    std::vector<double> samples;
    for (double t : sample_grid) {
        if (limit.contains(t)) {
            samples.push_back(t);
        }
    }
    for (const auto& f : seq) {
        samples.insert(samples.end(), f.breakpoints().begin(), f.breakpoints().end());
    }
    samples.insert(samples.end(), limit.breakpoints().begin(), limit.breakpoints().end());
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    ConvergenceDiagnostics out;
    out.limit_variation = total_variation(limit);
    for (const auto& f : seq) {
        ConvergenceEntry e;
        for (double t : samples) {
            e.sup_error = std::max(e.sup_error, (f.value(t) - limit.value(t)).norm());
        }
        e.l1_distance = l1_distance(f, limit);
        e.variation = total_variation(f);
        e.variation_gap = std::abs(e.variation - out.limit_variation);
        out.entries.push_back(e);
    }

    const auto& last = out.entries.back();
    out.pointwise = last.sup_error <= tol.pointwise;
    const std::size_t window = std::min(std::max<std::size_t>(tol.tail, 1), out.entries.size());
    bool nonincreasing = true;
    for (std::size_t i = out.entries.size() - window + 1; i < out.entries.size(); ++i) {
        nonincreasing = nonincreasing && out.entries[i].l1_distance <= out.entries[i - 1].l1_distance + 1e-12;
    }
    out.weak_star = nonincreasing && last.l1_distance <= tol.l1;
    out.intermediate = out.weak_star && last.variation_gap <= tol.variation;
    return out;
}

PathBuilder& PathBuilder::jump(double t, const Vec& left, const Vec& value, const Vec& right) {
    if (!times_.empty() && !(t > times_.back())) {
        throw PreconditionError("path builder times must be strictly increasing");
    }
    times_.push_back(t);
    nodes_.push_back(Node{left, value, right});
    return *this;
}

PiecewisePath PathBuilder::build() const {
    if (times_.size() < 2) {
        throw PreconditionError("path builder needs at least two nodes");
    }
    auto nodes = nodes_;
    nodes.front().left = nodes.front().value;
    nodes.back().right = nodes.back().value;
    return PiecewisePath(times_, std::move(nodes));
}

} // namespace rislab
