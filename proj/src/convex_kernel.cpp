#include "rislab/convex_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace rislab {

std::string to_string(DissipationKind kind) {
    switch (kind) {
    case DissipationKind::ScaledNorm:
        return "scaled_norm";
    case DissipationKind::WeightedL1:
        return "weighted_l1";
    case DissipationKind::Polyhedral:
        return "polyhedral";
    }
    return "unknown";
}

namespace polytope {
namespace {

// Calls `visit` with every index subset of {0..m-1} of size `k`.
void for_each_combination(int m, int k, const std::function<void(const std::vector<int>&)>& visit) {
    if (k > m || k <= 0) {
        return;
    }
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) {
            --i;
        }
        if (i < 0) {
            return;
        }
        ++idx[i];
        for (int j = i + 1; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

double scale_of(const std::vector<Vec>& points) {
    double s = 0.0;
    for (const auto& p : points) {
        s = std::max(s, p.cwiseAbs().maxCoeff());
    }
    return std::max(s, 1.0);
}

} // namespace

Vec project_by_enumeration(const std::vector<Vec>& points, const Vec& w) {
    if (points.empty()) {
        throw PreconditionError("projection onto an empty polytope");
    }
    const int m = static_cast<int>(points.size());
    const int d = static_cast<int>(w.size());
    const double scale = scale_of(points);
    const double bary_tol = 1e-12;

    Vec best = points.front();
    double best_dist = (best - w).squaredNorm();
    for (int i = 1; i < m; ++i) {
        const double dist = (points[i] - w).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            best = points[i];
        }
    }

    for (int k = 2; k <= std::min(m, d + 1); ++k) {
        for_each_combination(m, k, [&](const std::vector<int>& idx) {
            Mat D(d, k - 1);
            const Vec& p0 = points[idx[0]];
            for (int j = 1; j < k; ++j) {
                D.col(j - 1) = points[idx[j]] - p0;
            }
            Eigen::ColPivHouseholderQR<Mat> qr(D);
            qr.setThreshold(1e-12);
            if (qr.rank() < k - 1) {
                return;
            }
            const Vec beta = qr.solve(w - p0);
            const double lambda0 = 1.0 - beta.sum();
            if (lambda0 < -bary_tol || (beta.size() > 0 && beta.minCoeff() < -bary_tol)) {
                return;
            }
            const Vec candidate = p0 + D * beta;
            const double dist = (candidate - w).squaredNorm();
            if (dist < best_dist - 1e-15 * scale * scale) {
                best_dist = dist;
                best = candidate;
            }
        });
    }
    return best;
}

Vec project_by_wolfe(const std::vector<Vec>& points, const Vec& w, double tol, std::vector<int>* support_out) {
    if (points.empty()) {
        throw PreconditionError("projection onto an empty polytope");
    }
    const int m = static_cast<int>(points.size());
    const int d = static_cast<int>(w.size());
    Mat P(d, m);
    for (int i = 0; i < m; ++i) {
        P.col(i) = points[i] - w;
    }
    // All iterates are convex combinations of the columns of P, so the
    // method runs entirely on the Gram matrix.
    const Mat G = P.transpose() * P;
    const double max_norm2 = std::max(G.diagonal().maxCoeff(), 1e-300);

    int first = 0;
    G.diagonal().minCoeff(&first);
    std::vector<int> support{first};
    std::vector<double> lambda{1.0};
    constexpr double kPositive = 1e-15;

    Vec gx(m);
    double xx = 0.0;
    auto refresh = [&] {
        gx.setZero();
        for (std::size_t j = 0; j < support.size(); ++j) {
            gx += lambda[j] * G.col(support[j]);
        }
        xx = 0.0;
        for (std::size_t j = 0; j < support.size(); ++j) {
            xx += lambda[j] * gx(support[j]);
        }
    };
    refresh();

    for (int major = 0; major < 10 * m + 100; ++major) {
        int entering = 0;
        const double best = gx.minCoeff(&entering);
        if (xx - best <= tol * max_norm2) {
            break;
        }
        if (std::find(support.begin(), support.end(), entering) != support.end()) {
            break;
        }
        support.push_back(entering);
        lambda.push_back(0.0);

        for (int minor = 0; minor < 10 * m + 100; ++minor) {
            const int k = static_cast<int>(support.size());
            Mat M(k + 1, k + 1);
            for (int a = 0; a < k; ++a) {
                for (int b = 0; b < k; ++b) {
                    M(a, b) = G(support[a], support[b]);
                }
                M(a, k) = 1.0;
                M(k, a) = 1.0;
            }
            M(k, k) = 0.0;
            Vec rhs = Vec::Zero(k + 1);
            rhs(k) = 1.0;
            const Vec alpha = M.completeOrthogonalDecomposition().solve(rhs);

            if (alpha.head(k).minCoeff() > kPositive) {
                lambda.assign(alpha.data(), alpha.data() + k);
                break;
            }
            double theta = 1.0;
            for (int i = 0; i < k; ++i) {
                if (alpha(i) <= kPositive && lambda[i] - alpha(i) > 0.0) {
                    theta = std::min(theta, lambda[i] / (lambda[i] - alpha(i)));
                }
            }
            std::vector<int> kept_support;
            std::vector<double> kept_lambda;
            for (int i = 0; i < k; ++i) {
                const double l = theta * alpha(i) + (1.0 - theta) * lambda[i];
                if (l > kPositive) {
                    kept_support.push_back(support[i]);
                    kept_lambda.push_back(l);
                }
            }
            if (kept_support.empty()) {
                kept_support.push_back(support.back());
                kept_lambda.push_back(1.0);
            }
            const double total = std::accumulate(kept_lambda.begin(), kept_lambda.end(), 0.0);
            for (auto& l : kept_lambda) {
                l /= total;
            }
            support = std::move(kept_support);
            lambda = std::move(kept_lambda);
        }
        refresh();
    }
    if (xx <= 1e-28 * max_norm2) {
        if (support_out) {
            support_out->clear();
        }
        return w;
    }
    if (support_out) {
        *support_out = support;
        std::sort(support_out->begin(), support_out->end());
    }
    Vec x = Vec::Zero(d);
    for (std::size_t j = 0; j < support.size(); ++j) {
        x += lambda[j] * P.col(support[j]);
    }
    return w + x;
}

double inner_radius(const std::vector<Vec>& points) {
    if (points.empty()) {
        return 0.0;
    }
    const int d = static_cast<int>(points.front().size());
    const int m = static_cast<int>(points.size());
    const double tol = 1e-12 * scale_of(points);

    if (d == 1) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& p : points) {
            lo = std::min(lo, p(0));
            hi = std::max(hi, p(0));
        }
        return std::max(0.0, std::min(hi, -lo));
    }

    double radius = std::numeric_limits<double>::infinity();
    bool found = false;
    for_each_combination(m, d, [&](const std::vector<int>& idx) {
        Mat D(d - 1, d);
        const Vec& p0 = points[idx[0]];
        for (int j = 1; j < d; ++j) {
            D.row(j - 1) = (points[idx[j]] - p0).transpose();
        }
        Eigen::FullPivLU<Mat> lu(D);
        lu.setThreshold(1e-12);
        if (lu.rank() < d - 1) {
            return;
        }
        const Mat kernel = lu.kernel();
        if (kernel.cols() != 1) {
            return;
        }
        Vec normal = kernel.col(0).normalized();
        double offset = normal.dot(p0);
        bool below = true;
        bool above = true;
        for (const auto& p : points) {
            const double v = normal.dot(p) - offset;
            below = below && v <= tol;
            above = above && v >= -tol;
        }
        if (!below && !above) {
            return;
        }
        if (!below) {
            offset = -offset;
        }
        found = true;
        radius = std::min(radius, offset);
    });
    if (!found) {
        return 0.0;
    }
    return std::max(0.0, radius);
}

} // namespace polytope

Dissipation Dissipation::scaled_norm(int dim, double alpha) {
    if (dim <= 0) {
        throw PreconditionError("dissipation dimension must be positive");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw PreconditionError("scaled_norm requires a finite alpha > 0");
    }
    Dissipation R;
    R.kind_ = DissipationKind::ScaledNorm;
    R.dim_ = dim;
    R.alpha_ = alpha;
    R.c_ = alpha;
    R.C_ = alpha;
    return R;
}

Dissipation Dissipation::weighted_l1(Vec weights) {
    if (weights.size() == 0) {
        throw PreconditionError("weighted_l1 requires at least one weight");
    }
    if (!weights.allFinite() || weights.minCoeff() <= 0.0) {
        throw PreconditionError("weighted_l1 requires finite positive weights");
    }
    Dissipation R;
    R.kind_ = DissipationKind::WeightedL1;
    R.dim_ = static_cast<int>(weights.size());
    R.c_ = weights.minCoeff();
    R.C_ = weights.norm();
    R.weights_ = std::move(weights);
    return R;
}

Dissipation Dissipation::polyhedral(std::vector<Vec> vertices) {
    if (vertices.empty()) {
        throw PreconditionError("polyhedral dissipation requires vertices");
    }
    const auto dim = vertices.front().size();
    for (const auto& v : vertices) {
        if (v.size() != dim || !v.allFinite()) {
            throw PreconditionError("polyhedral vertices must be finite and of equal dimension");
        }
    }
    Dissipation R;
    R.kind_ = DissipationKind::Polyhedral;
    R.dim_ = static_cast<int>(dim);
    R.c_ = polytope::inner_radius(vertices);
    if (!(R.c_ > 0.0)) {
        throw PreconditionError("polyhedral dissipation is not coercive: the origin is not interior to the hull");
    }
    double C = 0.0;
    for (const auto& v : vertices) {
        C = std::max(C, v.norm());
    }
    R.C_ = C;
    R.vertices_ = std::move(vertices);
    return R;
}

void Dissipation::check_dim(const Vec& v) const {
    if (v.size() != dim_) {
        throw PreconditionError("vector dimension " + std::to_string(v.size()) + " does not match dissipation dimension " +
                                std::to_string(dim_));
    }
}

double Dissipation::eval(const Vec& v) const {
    check_dim(v);
    switch (kind_) {
    case DissipationKind::ScaledNorm:
        return alpha_ * v.norm();
    case DissipationKind::WeightedL1:
        return weights_.dot(v.cwiseAbs());
    case DissipationKind::Polyhedral: {
        double r = -std::numeric_limits<double>::infinity();
        for (const auto& g : vertices_) {
            r = std::max(r, g.dot(v));
        }
        return std::max(r, 0.0);
    }
    }
    return 0.0;
}

Vec Dissipation::project_subdiff0(const Vec& w) const {
    check_dim(w);
    switch (kind_) {
    case DissipationKind::ScaledNorm: {
        const double n = w.norm();
        return n <= alpha_ ? Vec(w) : Vec(w * (alpha_ / n));
    }
    case DissipationKind::WeightedL1:
        return w.cwiseMax(-weights_).cwiseMin(weights_);
    case DissipationKind::Polyhedral:
        return polytope::project_by_wolfe(vertices_, w, 1e-14);
    }
    return w;
}

std::uint64_t Dissipation::projection_face(const Vec& w) const {
    check_dim(w);
    std::uint64_t label = 0;
    switch (kind_) {
    case DissipationKind::ScaledNorm:
        return w.norm() > alpha_ ? 1 : 0;
    case DissipationKind::WeightedL1:
        for (int i = 0; i < dim_; ++i) {
            const std::uint64_t code = w(i) > weights_(i) ? 1 : (w(i) < -weights_(i) ? 2 : 0);
            label = label * 3 + code;
        }
        return label;
    case DissipationKind::Polyhedral: {
        std::vector<int> support;
        const Vec proj = polytope::project_by_wolfe(vertices_, w, 1e-14, &support);
        if ((w - proj).norm() <= 1e-12 * C_) {
            return 0;
        }
        for (int i : support) {
            label = label * 1099511628211ULL + static_cast<std::uint64_t>(i) + 1;
        }
        return label;
    }
    }
    return label;
}

double Dissipation::dist_to_subdiff0(const Vec& w) const {
    check_dim(w);
    switch (kind_) {
    case DissipationKind::ScaledNorm:
        return std::max(w.norm() - alpha_, 0.0);
    case DissipationKind::WeightedL1:
        return (w.cwiseAbs() - weights_).cwiseMax(0.0).norm();
    case DissipationKind::Polyhedral:
        return (w - project_subdiff0(w)).norm();
    }
    return 0.0;
}

double Dissipation::dist_to_subdiff(const Vec& v, const Vec& w) const {
    check_dim(v);
    check_dim(w);
    switch (kind_) {
    case DissipationKind::ScaledNorm: {
        const double n = v.norm();
        if (n == 0.0) {
            return dist_to_subdiff0(w);
        }
        return (w - v * (alpha_ / n)).norm();
    }
    case DissipationKind::WeightedL1: {
        double sum = 0.0;
        for (int i = 0; i < dim_; ++i) {
            double gap = 0.0;
            if (v(i) > 0.0) {
                gap = w(i) - weights_(i);
            } else if (v(i) < 0.0) {
                gap = w(i) + weights_(i);
            } else {
                gap = std::max(std::abs(w(i)) - weights_(i), 0.0);
            }
            sum += gap * gap;
        }
        return std::sqrt(sum);
    }
    case DissipationKind::Polyhedral: {
        const double r = eval(v);
        const double tol = 1e-12 * std::max(1.0, C_) * std::max(1.0, v.norm());
        std::vector<Vec> face;
        for (const auto& g : vertices_) {
            if (g.dot(v) >= r - tol) {
                face.push_back(g);
            }
        }
        const Vec proj = dim_ <= 3 ? polytope::project_by_enumeration(face, w) : polytope::project_by_wolfe(face, w);
        return (w - proj).norm();
    }
    }
    return 0.0;
}

Vec Dissipation::prox(const Vec& v, double lambda) const {
    check_dim(v);
    if (!(lambda > 0.0)) {
        throw PreconditionError("prox parameter must be positive");
    }
    return v - lambda * project_subdiff0(v / lambda);
}

std::string Dissipation::describe() const {
    std::ostringstream os;
    os << to_string(kind_) << "(d=" << dim_;
    switch (kind_) {
    case DissipationKind::ScaledNorm:
        os << ", alpha=" << alpha_;
        break;
    case DissipationKind::WeightedL1:
        os << ", w=[" << weights_.transpose() << "]";
        break;
    case DissipationKind::Polyhedral:
        os << ", " << vertices_.size() << " vertices";
        break;
    }
    os << ")";
    return os.str();
}

ContactPotentialValue contact_potential(const Dissipation& R, const Vec& v, const Vec& w) {
    ContactPotentialValue out;
    out.r_part = R.eval(v);
    const double speed = v.norm();
    out.dist_part = speed == 0.0 ? 0.0 : speed * R.dist_to_subdiff0(w);
    out.total = out.r_part + out.dist_part;
    return out;
}

} // namespace rislab
