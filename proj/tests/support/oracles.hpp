#pragma once

#include "rislab/convex_kernel.hpp"
#include "rislab/model.hpp"
#include "rislab/paths.hpp"
#include "rislab/tuple.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace rislab::oracle {

/// Largest partition sum Σ R(z(t_k) - z(t_{k-1})) over partitions made of the
/// breakpoints of z in [t1, t2] and a uniform grid of 2^k cells, k ≤ max_level.
inline double refinement_sup_dissipation(const Dissipation& R, const PiecewisePath& z, double t1, double t2,
                                         int max_level = 10) {
    double best = 0.0;
    for (int level = 0; level <= max_level; ++level) {
        const int cells = 1 << level;
        std::vector<double> pts;
        for (int i = 0; i <= cells; ++i) {
            pts.push_back(t1 + (t2 - t1) * i / cells);
        }
        for (double t : z.breakpoints()) {
            if (t > t1 && t < t2) {
                pts.push_back(t);
            }
        }
        std::sort(pts.begin(), pts.end());
        double sum = 0.0;
        for (std::size_t k = 1; k < pts.size(); ++k) {
            sum += R.eval(z.value(pts[k]) - z.value(pts[k - 1]));
        }
        best = std::max(best, sum);
    }
    return best;
}

/// Unit vectors on a latitude/longitude grid (d = 3), a circle (d = 2) or ±1 (d = 1).
inline std::vector<Vec> sphere_grid(int dim, int resolution) {
    std::vector<Vec> out;
    if (dim == 1) {
        out.push_back(scalar_vec(1.0));
        out.push_back(scalar_vec(-1.0));
    } else if (dim == 2) {
        for (int i = 0; i < 4 * resolution; ++i) {
            const double a = 2.0 * std::numbers::pi * i / (4 * resolution);
            out.push_back(Vec{{std::cos(a), std::sin(a)}});
        }
    } else {
        for (int i = 0; i <= resolution; ++i) {
            const double th = std::numbers::pi * i / resolution;
            const int m = std::max(1, static_cast<int>(std::round(2 * resolution * std::sin(th))));
            for (int j = 0; j < m; ++j) {
                const double ph = 2.0 * std::numbers::pi * j / m;
                out.push_back(Vec{{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}});
            }
        }
    }
    return out;
}

/// sup over ‖v‖ ≤ τ of ⟨η, v⟩ - R(v) by grid search: the objective is
/// positively homogeneous, so the sup is τ max(0, max over unit directions),
/// found on a sphere grid refined locally around the best direction.
inline double grid_sup_conjugate(const Dissipation& R, const Vec& eta, double tau) {
    const int d = static_cast<int>(eta.size());
    auto f = [&](const Vec& v) { return eta.dot(v) - R.eval(v); };
    double best = 0.0;
    Vec best_dir = Vec::Zero(d);
    for (const Vec& v : sphere_grid(d, d == 3 ? 120 : 2000)) {
        const double val = f(v);
        if (val > best) {
            best = val;
            best_dir = v;
        }
    }
    if (d >= 2 && best > 0.0) {
        double radius = d == 3 ? 0.05 : 0.005;
        for (int round = 0; round < 6; ++round) {
            const int steps = 40;
            Vec centre = best_dir;
            std::vector<Vec> basis;
            Mat P = Mat::Identity(d, d) - centre * centre.transpose();
            Eigen::JacobiSVD<Mat> svd(P, Eigen::ComputeFullU);
            for (int k = 0; k < d - 1; ++k) {
                basis.push_back(svd.matrixU().col(k));
            }
            auto visit = [&](const Vec& w) {
                const Vec v = w.normalized();
                const double val = f(v);
                if (val > best) {
                    best = val;
                    best_dir = v;
                }
            };
            if (d == 2) {
                for (int i = -steps; i <= steps; ++i) {
                    visit(centre + radius * i / steps * basis[0]);
                }
            } else {
                for (int i = -steps; i <= steps; ++i) {
                    for (int j = -steps; j <= steps; ++j) {
                        visit(centre + radius * i / steps * basis[0] + radius * j / steps * basis[1]);
                    }
                }
            }
            radius /= 8.0;
        }
    }
    return tau * best;
}

/// Σ ⟨z(ξ_k), ℓ(t_k) - ℓ(t_{k-1})⟩ with midpoint tags on a uniform grid;
/// converges to the Stieltjes integral for continuous ℓ.
inline double riemann_stieltjes(const PiecewisePath& z, const PiecewisePath& ell, double t1, double t2, int cells) {
    double sum = 0.0;
    for (int k = 0; k < cells; ++k) {
        const double a = t1 + (t2 - t1) * k / cells;
        const double b = t1 + (t2 - t1) * (k + 1) / cells;
        sum += z.value(0.5 * (a + b)).dot(ell.value(b) - ell.value(a));
    }
    return sum;
}

/// Composite midpoint rule.
template <class F>
double midpoint_integral(F&& f, double a, double b, int cells) {
    double sum = 0.0;
    const double h = (b - a) / cells;
    for (int k = 0; k < cells; ++k) {
        sum += f(a + (k + 0.5) * h);
    }
    return sum * h;
}

inline Vec random_vec(std::mt19937& rng, int dim, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Vec v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = g(rng);
    }
    return v;
}

inline std::vector<double> random_times(std::mt19937& rng, double a, double b, int segments) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    std::vector<double> w(segments);
    double total = 0.0;
    for (double& x : w) {
        x = u(rng);
        total += x;
    }
    std::vector<double> ts{a};
    double acc = 0.0;
    for (int k = 0; k < segments - 1; ++k) {
        acc += w[k];
        ts.push_back(a + (b - a) * acc / total);
    }
    ts.push_back(b);
    return ts;
}

inline PiecewisePath random_continuous_path(std::mt19937& rng, int dim, double a, double b, int segments,
                                            double scale = 1.0) {
    const auto ts = random_times(rng, a, b, segments);
    std::vector<Vec> vs;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        vs.push_back(random_vec(rng, dim, scale));
    }
    return PiecewisePath::interpolate(ts, vs);
}

/// Piecewise-affine path with a random jump triple at every interior breakpoint
/// and random one-sided limits at the ends.
inline PiecewisePath random_jump_path(std::mt19937& rng, int dim, double a, double b, int segments) {
    const auto ts = random_times(rng, a, b, segments);
    std::vector<Node> nodes;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const Vec v = random_vec(rng, dim);
        Node n = Node::continuous(v);
        if (coin(rng)) {
            n.left = random_vec(rng, dim);
        }
        if (coin(rng)) {
            n.right = random_vec(rng, dim);
        }
        if (k == 0) {
            n.left = n.value;
        }
        if (k + 1 == ts.size()) {
            n.right = n.value;
        }
        nodes.push_back(std::move(n));
    }
    return PiecewisePath(ts, std::move(nodes));
}

/// Random nondecreasing continuous scalar path from 0 to T with some plateaus.
inline PiecewisePath random_monotone_path(std::mt19937& rng, double S, double T, int segments) {
    const auto ss = random_times(rng, 0.0, S, segments);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> inc(segments);
    double total = 0.0;
    for (double& x : inc) {
        x = u(rng) < 0.3 ? 0.0 : u(rng);
        total += x;
    }
    if (total == 0.0) {
        inc.back() = 1.0;
        total = 1.0;
    }
    std::vector<double> vals{0.0};
    double cumulative = 0.0;
    for (int k = 0; k < segments; ++k) {
        cumulative += inc[k];
        vals.push_back(T * std::min(cumulative / total, 1.0));
    }
    vals.back() = T;
    return PiecewisePath::scalar(ss, vals);
}

inline Dissipation random_dissipation(std::mt19937& rng, int dim, int kind) {
    std::uniform_real_distribution<double> u(0.3, 2.0);
    if (kind == 0) {
        return Dissipation::scaled_norm(dim, u(rng));
    }
    if (kind == 1) {
        Vec w(dim);
        for (int i = 0; i < dim; ++i) {
            w(i) = u(rng);
        }
        return Dissipation::weighted_l1(w);
    }
    std::vector<Vec> verts;
    for (int i = 0; i < dim; ++i) {
        Vec e = Vec::Zero(dim);
        e(i) = u(rng);
        verts.push_back(e);
        e(i) = -u(rng);
        verts.push_back(e);
    }
    for (int k = 0; k < 2 * dim; ++k) {
        verts.push_back(random_vec(rng, dim, 0.8));
    }
    return Dissipation::polyhedral(std::move(verts));
}

/// Tuple with random components on [0, S]; only the regularity requirements hold.
inline ParametrizedTuple random_tuple(std::mt19937& rng, int dim, double T) {
    std::uniform_real_distribution<double> u(0.5, 3.0);
    const double S = T + u(rng);
    LipschitzPath t_hat(random_monotone_path(rng, S, T, 7));
    LipschitzPath z_hat(random_continuous_path(rng, dim, 0.0, S, 9));
    return ParametrizedTuple(S, std::move(t_hat), std::move(z_hat), random_jump_path(rng, dim, 0.0, S, 6));
}

/// Problem with random SPD A, random affine or double-well F and random R,
/// stable at z0 = 0 under the constant load DF(0).
inline RISProblem random_problem(std::mt19937& rng, int dim, int kind, double T) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Mat B(dim, dim);
    for (int j = 0; j < dim; ++j) {
        B.col(j) = random_vec(rng, dim, 0.7);
    }
    Mat A = B * B.transpose() + 0.3 * Mat::Identity(dim, dim);
    A = (0.5 * (A + A.transpose())).eval();
    Nonlinearity F = u(rng) < 0.5 ? Nonlinearity::linear(random_vec(rng, dim, 0.5))
                                  : Nonlinearity::double_well(dim, 0.5 + u(rng));
    const Vec z0 = Vec::Zero(dim);
    const Vec ell0 = F.gradient(z0);
    EnergyModel E(A, std::move(F));
    return RISProblem(std::move(E), random_dissipation(rng, dim, kind), PiecewisePath::constant(0.0, T, ell0), z0,
                      ell0, T);
}

struct LocalSolution {
    RISProblem problem;
    PiecewisePath z;
};

/// Continuous piecewise-affine local solution for R = α‖·‖ and affine DE.
/// On a moving segment with direction q the load is Az + DF(z) + αq/‖q‖, so
/// that -D_zI(t, z) ∈ ∂R(ż); on a resting segment it is Az + DF(z) plus a
/// fixed interior point of the ball of radius α.
inline LocalSolution random_local_solution(std::mt19937& rng, int dim, int segments) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double alpha = 0.5 + u(rng);
    Mat B(dim, dim);
    for (int j = 0; j < dim; ++j) {
        B.col(j) = random_vec(rng, dim, 0.7);
    }
    Mat A = B * B.transpose() + 0.5 * Mat::Identity(dim, dim);
    A = (0.5 * (A + A.transpose())).eval();
    const bool linear = u(rng) < 0.5;
    const Vec b = linear ? random_vec(rng, dim, 0.5) : Vec::Zero(dim);
    EnergyModel E(A, linear ? Nonlinearity::linear(b) : Nonlinearity::zero(dim));

    const double T = 1.0 + u(rng);
    const auto ts = random_times(rng, 0.0, T, segments);
    std::vector<Vec> zs{random_vec(rng, dim, 0.5)};
    std::vector<bool> moving;
    for (int k = 0; k < segments; ++k) {
        const bool mv = u(rng) < 0.6;
        moving.push_back(mv);
        zs.push_back(mv ? (zs.back() + random_vec(rng, dim, 0.7)).eval() : zs.back());
    }
    const auto z = PiecewisePath::interpolate(ts, zs);

    std::vector<Vec> ws;
    for (int k = 0; k < segments; ++k) {
        if (moving[k]) {
            const Vec q = zs[k + 1] - zs[k];
            ws.push_back(alpha * q / q.norm());
        } else {
            Vec w = random_vec(rng, dim);
            ws.push_back(w / w.norm() * alpha * 0.9 * u(rng));
        }
    }
    std::vector<Node> nodes;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const Vec base = A * zs[k] + b;
        const Vec wl = ws[k == 0 ? 0 : k - 1];
        const Vec wr = ws[k + 1 == ts.size() ? k - 1 : k];
        const Vec wv = k == 0 ? wr : wl;
        nodes.push_back(Node{base + (k == 0 ? wv : wl), base + wv, base + (k + 1 == ts.size() ? wv : wr)});
    }
    PiecewisePath load(ts, std::move(nodes));
    const Vec ell0 = load.value(0.0);
    RISProblem problem(std::move(E), Dissipation::scaled_norm(dim, alpha), std::move(load), zs.front(), ell0, T);
    return {std::move(problem), z};
}

} // namespace rislab::oracle
