#include <cstdio>
#include "rislab/checkers.hpp"

#include "rislab/quadrature.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace rislab {
namespace {

using quadrature::adaptive_gauss16;
using quadrature::gauss_legendre16;
using quadrature::kGaussNodes;

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

ConditionResult make_condition(std::string id, double residual, double tol, std::optional<Witness> witness = {}) {
    ConditionResult c;
    c.id = std::move(id);
    c.residual = std::max(residual, 0.0);
    c.tolerance = tol;
    c.passed = c.residual <= tol;
    if (!c.passed) {
        c.witness = std::move(witness);
    }
    return c;
}

// Interior sample abscissae in [0, 1]: both ends and the Gauss nodes.
const std::vector<double>& unit_samples() {
    static const std::vector<double> pts = [] {
        std::vector<double> v{0.0, 1.0};
        for (double x : gauss_legendre16().nodes) {
            v.push_back(0.5 * (x + 1.0));
        }
        return v;
    }();
    return pts;
}

// One affine piece of a tuple between consecutive merged breakpoints.
struct Piece {
    double u = 0.0;
    double v = 0.0;
    double tp = 0.0;
    Vec zu, zv, q, lu, lv;

    double length() const { return v - u; }
    Vec z_at(double theta) const { return (1.0 - theta) * zu + theta * zv; }
    Vec l_at(double theta) const { return (1.0 - theta) * lu + theta * lv; }
};

std::vector<Piece> tuple_pieces(const ParametrizedTuple& tuple) {
    const PiecewisePath* paths[] = {&tuple.t_hat.path(), &tuple.z_hat.path(), &tuple.ell_hat};
    const auto pts = merged_breakpoints(paths, 0.0, tuple.S);
    std::vector<Piece> pieces;
    pieces.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Piece p;
        p.u = pts[i];
        p.v = pts[i + 1];
        const double tu = tuple.t_hat.path().scalar_value(p.u);
        const double tv = tuple.t_hat.path().scalar_value(p.v);
        p.tp = (tv - tu) / p.length();
        p.zu = tuple.z_hat.path().value(p.u);
        p.zv = tuple.z_hat.path().value(p.v);
        p.q = (p.zv - p.zu) / p.length();
        p.lu = tuple.ell_hat.right_limit(p.u);
        p.lv = tuple.ell_hat.left_limit(p.v);
        pieces.push_back(std::move(p));
    }
    return pieces;
}

// -D_zÎ along a piece.
Vec drive(const Piece& p, const EnergyModel& E, double theta) { return p.l_at(theta) - E.gradient(p.z_at(theta)); }

// Points of [0, θ] where the drive crosses into another face of ∂R(0),
// located by bisection between uniform samples. The integrand is smooth
// between consecutive entries of the result.
std::vector<double> face_changes(const Piece& p, const RISProblem& problem, double theta) {
    constexpr int kSamples = 8;
    const double resolution = 1e-13 * theta;
    auto face = [&](double x) { return problem.R.projection_face(drive(p, problem.energy, x)); };
    std::vector<double> cuts{0.0};
    auto bisect = [&](auto&& self, double lo, std::uint64_t f_lo, double hi, std::uint64_t f_hi) -> void {
        if (f_lo == f_hi) {
            return;
        }
        if (hi - lo <= resolution) {
            cuts.push_back(0.5 * (lo + hi));
            return;
        }
        const double mid = 0.5 * (lo + hi);
        const auto f_mid = face(mid);
        self(self, lo, f_lo, mid, f_mid);
        self(self, mid, f_mid, hi, f_hi);
    };
    double x0 = 0.0;
    auto f0 = face(x0);
    for (int k = 1; k <= kSamples; ++k) {
        const double x1 = theta * k / kSamples;
        const auto f1 = face(x1);
        bisect(bisect, x0, f0, x1, f1);
        x0 = x1;
        f0 = f1;
    }
    cuts.push_back(theta);
    return cuts;
}

// ∫_u^{u + θ(v-u)} R(ẑ') + ‖ẑ'‖ dist(-D_zÎ, ∂R(0)) - ⟨ℓ̂, ẑ'⟩ ds.
double piece_flux(const Piece& p, const RISProblem& problem, double theta) {
    if (theta <= 0.0) {
        return 0.0;
    }
    const double h = theta * p.length();
    const double qn = p.q.norm();
    double dist_int = 0.0;
    if (qn > 0.0) {
        const auto cuts = face_changes(p, problem, theta);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            dist_int += p.length() * adaptive_gauss16(
                                         [&](double x) { return problem.R.dist_to_subdiff0(drive(p, problem.energy, x)); },
                                         cuts[i], cuts[i + 1], 1e-13);
        }
    }
    const Vec l_mean = 0.5 * (p.lu + p.l_at(theta));
    return problem.R.eval(p.q) * h + qn * dist_int - l_mean.dot(p.q) * h;
}

ConditionResult endpoint_condition(const ParametrizedTuple& tuple, const RISProblem& problem, double tol) {
    const double r0 = std::abs(tuple.t_hat.path().scalar_value(0.0));
    const double r1 = std::abs(tuple.t_hat.path().scalar_value(tuple.S) - problem.T);
    const double r2 = (tuple.z_hat.path().value(0.0) - problem.z0).norm();
    const double r = std::max({r0, r1, r2});
    Witness w{0.0, tuple.S, "t(0) = " + fmt(tuple.t_hat.path().scalar_value(0.0)) + ", t(S) = " +
                                fmt(tuple.t_hat.path().scalar_value(tuple.S)) + ", |z(0) - z0| = " + fmt(r2)};
    return make_condition("endpoint", r, tol, w);
}

void tuple_core_conditions(const ParametrizedTuple& tuple, const RISProblem& problem, double tol,
                           std::vector<ConditionResult>& out) {
    if (tuple.dim() != problem.dim()) {
        throw PreconditionError("tuple and problem dimensions differ");
    }
    out.push_back(endpoint_condition(tuple, problem, tol));
    const auto pieces = tuple_pieces(tuple);
    const auto& E = problem.energy;
    const auto& R = problem.R;

    double sign_r = 0.0;
    double comp_r = 0.0;
    double norm_r = 0.0;
    Witness sign_w, comp_w, norm_w;
    for (const auto& p : pieces) {
        if (-p.tp > sign_r) {
            sign_r = -p.tp;
            sign_w = {p.u, p.v, "t' = " + fmt(p.tp)};
        }
        const double rq = R.eval(p.q);
        const double qn = p.q.norm();
        for (double theta : unit_samples()) {
            const double dist = R.dist_to_subdiff0(drive(p, E, theta));
            const double comp = std::abs(p.tp) * dist;
            if (comp > comp_r) {
                comp_r = comp;
                comp_w = {p.u, p.v, "t' dist(-DI, dR(0)) = " + fmt(comp)};
            }
            const double g = p.tp + rq + qn * dist;
            if (std::abs(g - 1.0) > norm_r) {
                norm_r = std::abs(g - 1.0);
                norm_w = {p.u, p.v, "t' + R(z') + |z'| dist = " + fmt(g)};
            }
        }
    }
    out.push_back(make_condition("sign", sign_r, tol, sign_w));
    out.push_back(make_condition("complementarity", comp_r, tol, comp_w));
    out.push_back(make_condition("normalization", norm_r, tol, norm_w));

    // Φ(s) = E(ẑ(s)) + ∫_0^s (𝔭 - ⟨ℓ̂, ẑ'⟩); the identity holds iff Φ is constant.
    double acc = E.energy(pieces.front().zu);
    double phi_min = acc;
    double phi_max = acc;
    double s_min = 0.0;
    double s_max = 0.0;
    auto record = [&](double s, double phi) {
        if (phi < phi_min) {
            phi_min = phi;
            s_min = s;
        }
        if (phi > phi_max) {
            phi_max = phi;
            s_max = s;
        }
    };
    double base = 0.0;
    for (const auto& p : pieces) {
        for (double theta : {0.25, 0.5, 0.75}) {
            record(p.u + theta * p.length(), E.energy(p.z_at(theta)) + base + piece_flux(p, problem, theta));
        }
        base += piece_flux(p, problem, 1.0);
        record(p.v, E.energy(p.zv) + base);
    }
    Witness energy_w{std::min(s_min, s_max), std::max(s_min, s_max),
                     "energy balance drifts by " + fmt(phi_max - phi_min)};
    out.push_back(make_condition("energy_identity", phi_max - phi_min, tol, energy_w));
}

struct TimeLimits {
    Vec minus;
    Vec value;
    Vec plus;
};

TimeLimits load_limits(const RISProblem& problem, double t) {
    TimeLimits l;
    l.value = problem.load.value(t);
    l.minus = t <= 0.0 ? l.value : problem.load.left_limit(t);
    l.plus = t >= problem.T ? l.value : problem.load.right_limit(t);
    return l;
}

double nearest_admissible(const Vec& v, const TimeLimits& l) {
    return std::min({(v - l.value).norm(), (v - l.minus).norm(), (v - l.plus).norm()});
}

// Largest deviation of ℓ̂ from `target` on the part of [lo, hi] selected by
// the open/closed flags; exact because ℓ̂ is affine between its breakpoints.
double deviation(const PiecewisePath& f, double lo, double hi, bool include_lo, bool include_hi, const Vec& target) {
    if (!(hi > lo)) {
        if (include_lo && include_hi) {
            return (f.value(lo) - target).norm();
        }
        return 0.0;
    }
    double r = std::max((f.right_limit(lo) - target).norm(), (f.left_limit(hi) - target).norm());
    if (include_lo) {
        r = std::max(r, (f.value(lo) - target).norm());
    }
    if (include_hi) {
        r = std::max(r, (f.value(hi) - target).norm());
    }
    const auto& bps = f.breakpoints();
    for (auto it = std::upper_bound(bps.begin(), bps.end(), lo); it != bps.end() && *it < hi; ++it) {
        const auto& n = f.nodes()[static_cast<std::size_t>(it - bps.begin())];
        r = std::max({r, (n.left - target).norm(), (n.value - target).norm(), (n.right - target).norm()});
    }
    return r;
}

ConditionResult compatibility_condition(const ParametrizedTuple& tuple, const RISProblem& problem, double tol) {
    const auto& ell_hat = tuple.ell_hat;
    const auto flats = plateaus(tuple.t_hat);
    double worst = 0.0;
    Witness worst_w;

    for (const auto& [lo, hi] : flats) {
        const double t_star = tuple.t_hat.path().scalar_value(lo);
        const auto lim = load_limits(problem, t_star);
        std::vector<double> candidates{lo};
        const auto& bps = ell_hat.breakpoints();
        for (auto it = std::upper_bound(bps.begin(), bps.end(), lo); it != bps.end() && *it < hi; ++it) {
            candidates.push_back(*it);
        }
        candidates.push_back(hi);
        double best = std::numeric_limits<double>::infinity();
        double best_s = lo;
        for (double c : candidates) {
            const double r = std::max({deviation(ell_hat, lo, c, true, false, lim.minus),
                                       deviation(ell_hat, c, hi, false, true, lim.plus),
                                       nearest_admissible(ell_hat.value(c), lim)});
            if (r < best) {
                best = r;
                best_s = c;
            }
        }
        if (best > worst) {
            worst = best;
            worst_w = {lo, hi, "on the plateau t = " + fmt(t_star) + " no switch point keeps l_hat in {l(t-), l(t+)}" +
                                   " (best s* = " + fmt(best_s) + ", deviation " + fmt(best) + ")"};
        }
    }

    // Outside plateaus every preimage is a singleton.
    const PiecewisePath composed = compose_monotone(problem.load, tuple.t_hat);
    const PiecewisePath* paths[] = {&tuple.t_hat.path(), &ell_hat, &composed};
    const auto pts = merged_breakpoints(paths, 0.0, tuple.S);
    auto on_plateau = [&](double s) {
        return std::any_of(flats.begin(), flats.end(), [s](const auto& f) { return s >= f.first && s <= f.second; });
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double s = pts[i];
        if (!on_plateau(s)) {
            const double t = tuple.t_hat.path().scalar_value(s);
            const double r = nearest_admissible(ell_hat.value(s), load_limits(problem, t));
            if (r > worst) {
                worst = r;
                worst_w = {s, s, "l_hat(" + fmt(s) + ") is none of l(t-), l(t), l(t+) at t = " + fmt(t)};
            }
        }
        if (i + 1 < pts.size()) {
            const double u = s;
            const double v = pts[i + 1];
            if (tuple.t_hat.path().scalar_value(v) > tuple.t_hat.path().scalar_value(u)) {
                const double r = std::max((ell_hat.right_limit(u) - composed.right_limit(u)).norm(),
                                          (ell_hat.left_limit(v) - composed.left_limit(v)).norm());
                if (r > worst) {
                    worst = r;
                    worst_w = {u, v, "l_hat differs from l o t_hat by " + fmt(r)};
                }
            }
        }
    }
    return make_condition("load_compatibility", worst, tol, worst_w);
}

ConditionResult increasing_set_condition(const ParametrizedTuple& tuple, const RISProblem& problem, double tol) {
    const PiecewisePath composed = compose_monotone(problem.load, tuple.t_hat);
    const PiecewisePath* paths[] = {&tuple.t_hat.path(), &tuple.ell_hat, &composed};
    const auto pts = merged_breakpoints(paths, 0.0, tuple.S);
    double worst = 0.0;
    Witness w;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double u = pts[i];
        const double v = pts[i + 1];
        if (!(tuple.t_hat.path().scalar_value(v) > tuple.t_hat.path().scalar_value(u))) {
            continue;
        }
        const double r = std::max((tuple.ell_hat.right_limit(u) - composed.right_limit(u)).norm(),
                                  (tuple.ell_hat.left_limit(v) - composed.left_limit(v)).norm());
        if (r > worst) {
            worst = r;
            w = {u, v, "l_hat differs from l o t_hat by " + fmt(r) + " where t_hat increases"};
        }
    }
    return make_condition("load_on_increasing_set", worst, tol, w);
}

void require_physical_domain(const PiecewisePath& z, const RISProblem& problem) {
    if (z.a() != 0.0 || z.b() != problem.T) {
        throw DomainError("solution must be defined on [0, T]");
    }
    if (z.dim() != problem.dim()) {
        throw PreconditionError("solution and problem dimensions differ");
    }
}

std::vector<double> physical_samples(const PiecewisePath& z, const RISProblem& problem,
                                     std::span<const double> grid) {
    const PiecewisePath* paths[] = {&z, &problem.load};
    const auto bps = merged_breakpoints(paths, 0.0, problem.T);
    std::vector<double> out = bps;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double h = bps[i + 1] - bps[i];
        for (double x : gauss_legendre16().nodes) {
            out.push_back(bps[i] + 0.5 * (x + 1.0) * h);
        }
    }
    for (double t : grid) {
        if (t >= 0.0 && t <= problem.T) {
            out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::string to_string(SolutionConcept c) {
    switch (c) {
    case SolutionConcept::Differential:
        return "differential";
    case SolutionConcept::Local:
        return "local";
    case SolutionConcept::NormalizedPbv:
        return "normalized_pbv";
    case SolutionConcept::Relaxed:
        return "relaxed";
    }
    return "unknown";
}

SolutionConcept parse_concept(const std::string& name) {
    if (name == "differential") {
        return SolutionConcept::Differential;
    }
    if (name == "local") {
        return SolutionConcept::Local;
    }
    if (name == "pbv" || name == "normalized_pbv") {
        return SolutionConcept::NormalizedPbv;
    }
    if (name == "relaxed") {
        return SolutionConcept::Relaxed;
    }
    throw PreconditionError("unknown solution concept '" + name + "'");
}

bool CheckReport::overall() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.passed; });
}

const ConditionResult* CheckReport::find(const std::string& id) const {
    for (const auto& c : conditions) {
        if (c.id == id) {
            return &c;
        }
    }
    return nullptr;
}

const ConditionResult& CheckReport::at(const std::string& id) const {
    if (const auto* c = find(id)) {
        return *c;
    }
    throw std::out_of_range("report has no condition '" + id + "'");
}

double CheckReport::worst_residual() const {
    double r = 0.0;
    for (const auto& c : conditions) {
        r = std::max(r, c.residual);
    }
    return r;
}

std::vector<std::string> CheckReport::failed_ids() const {
    std::vector<std::string> ids;
    for (const auto& c : conditions) {
        if (!c.passed) {
            ids.push_back(c.id);
        }
    }
    return ids;
}

std::string CheckReport::to_json(int indent) const {
    nlohmann::json j;
    j["concept"] = to_string(solution_concept);
    j["overall"] = overall() ? "pass" : "fail";
    j["conditions"] = nlohmann::json::array();
    for (const auto& c : conditions) {
        nlohmann::json jc{{"id", c.id}, {"residual", c.residual}, {"tolerance", c.tolerance},
                          {"verdict", c.passed ? "pass" : "fail"}};
        if (c.witness) {
            jc["witness"] = {{"lo", c.witness->lo}, {"hi", c.witness->hi}, {"description", c.witness->description}};
        }
        j["conditions"].push_back(std::move(jc));
    }
    return j.dump(indent);
}

std::string CheckReport::to_table() const {
    std::ostringstream os;
    os << "concept: " << to_string(solution_concept) << "  overall: " << (overall() ? "PASS" : "FAIL") << '\n';
    os << std::left << std::setw(24) << "condition" << std::setw(16) << "residual" << std::setw(12) << "tolerance"
       << "verdict\n";
    for (const auto& c : conditions) {
        os << std::left << std::setw(24) << c.id << std::setw(16) << std::setprecision(6) << c.residual
           << std::setw(12) << c.tolerance << (c.passed ? "PASS" : "FAIL") << '\n';
        if (c.witness) {
            os << "    at [" << c.witness->lo << ", " << c.witness->hi << "]: " << c.witness->description << '\n';
        }
    }
    return os.str();
}

bool IncreasingSet::contains(double s) const {
    return std::any_of(intervals.begin(), intervals.end(), [s](const auto& iv) { return s > iv.first && s < iv.second; });
}

double IncreasingSet::measure() const {
    double m = 0.0;
    for (const auto& [lo, hi] : intervals) {
        m += hi - lo;
    }
    return m;
}

IncreasingSet increasing_set(const LipschitzPath& t_hat) {
    if (t_hat.dim() != 1) {
        throw PreconditionError("t_hat must be scalar");
    }
    if (!t_hat.nondecreasing_scalar()) {
        throw PreconditionError("t_hat must be nondecreasing");
    }
    const auto& bps = t_hat.breakpoints();
    const auto& nodes = t_hat.path().nodes();
    IncreasingSet out;
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        if (nodes[k + 1].value(0) > nodes[k].value(0)) {
            if (!out.intervals.empty() && out.intervals.back().second == bps[k]) {
                out.intervals.back().second = bps[k + 1];
            } else {
                out.intervals.emplace_back(bps[k], bps[k + 1]);
            }
        }
    }
    return out;
}

std::vector<std::pair<double, double>> plateaus(const LipschitzPath& t_hat) {
    const auto& bps = t_hat.breakpoints();
    const auto& nodes = t_hat.path().nodes();
    std::vector<std::pair<double, double>> out;
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        if (nodes[k + 1].value(0) == nodes[k].value(0)) {
            if (!out.empty() && out.back().second == bps[k]) {
                out.back().second = bps[k + 1];
            } else {
                out.emplace_back(bps[k], bps[k + 1]);
            }
        }
    }
    return out;
}

CheckReport check_normalized_pbv(const ParametrizedTuple& tuple, const RISProblem& problem, double tol) {
    CheckReport report;
    report.solution_concept = SolutionConcept::NormalizedPbv;
    tuple_core_conditions(tuple, problem, tol, report.conditions);
    report.conditions.push_back(compatibility_condition(tuple, problem, tol));
    return report;
}

CheckReport check_relaxed(const ParametrizedTuple& tuple, const RISProblem& problem, double tol) {
    CheckReport report;
    report.solution_concept = SolutionConcept::Relaxed;
    tuple_core_conditions(tuple, problem, tol, report.conditions);
    report.conditions.push_back(increasing_set_condition(tuple, problem, tol));
    return report;
}

double energy_residual(const ParametrizedTuple& tuple, const RISProblem& problem, double s1, double s2) {
    if (!(0.0 <= s1 && s1 <= s2 && s2 <= tuple.S)) {
        throw PreconditionError("energy residual needs 0 <= s1 <= s2 <= S");
    }
    if (s1 == s2) {
        return 0.0;
    }
    const auto pieces = tuple_pieces(tuple);
    double flux = 0.0;
    for (const auto& p : pieces) {
        if (p.v <= s1 || p.u >= s2) {
            continue;
        }
        const double lo = std::max(p.u, s1);
        const double hi = std::min(p.v, s2);
        const double th_lo = (lo - p.u) / p.length();
        const double th_hi = hi == p.v ? 1.0 : (hi - p.u) / p.length();
        flux += piece_flux(p, problem, th_hi) - piece_flux(p, problem, th_lo);
    }
    const auto& E = problem.energy;
    return E.energy(tuple.z_hat(s2)) - E.energy(tuple.z_hat(s1)) + flux;
}

double normalization_residual(const ParametrizedTuple& tuple, const RISProblem& problem) {
    std::vector<ConditionResult> conds;
    tuple_core_conditions(tuple, problem, 0.0, conds);
    for (const auto& c : conds) {
        if (c.id == "normalization") {
            return c.residual;
        }
    }
    return 0.0;
}

EnergyGap max_energy_gap(const PiecewisePath& z, const RISProblem& problem, std::span<const double> grid) {
    require_physical_domain(z, problem);
    const auto samples = physical_samples(z, problem, grid);
    EnergyGap best;
    double diss = 0.0;
    double ks = 0.0;
    double psi_min = energy_I(problem, samples.front(), z.value(samples.front()));
    double t_min = samples.front();
    for (std::size_t j = 1; j < samples.size(); ++j) {
        diss += dissipation(problem.R, z, samples[j - 1], samples[j]);
        ks += kurzweil_stieltjes(z, problem.load, samples[j - 1], samples[j]);
        const double psi = energy_I(problem, samples[j], z.value(samples[j])) + diss + ks;
        if (psi - psi_min > best.gap) {
            best = {psi - psi_min, t_min, samples[j]};
        }
        if (psi < psi_min) {
            psi_min = psi;
            t_min = samples[j];
        }
    }
    return best;
}

CheckReport check_local(const PiecewisePath& z, const RISProblem& problem, double tol, std::span<const double> grid) {
    require_physical_domain(z, problem);
    CheckReport report;
    report.solution_concept = SolutionConcept::Local;
    const auto& E = problem.energy;
    const auto& R = problem.R;

    double stab = 0.0;
    Witness stab_w;
    auto probe = [&](double t, const Vec& zt, const Vec& lt, const char* which) {
        const double d = R.dist_to_subdiff0(lt - E.gradient(zt));
        if (d > stab) {
            stab = d;
            stab_w = {t, t, std::string("dist(-DI, dR(0)) = ") + fmt(d) + " (" + which + ")"};
        }
    };
    for (double t : physical_samples(z, problem, grid)) {
        probe(t, z.value(t), problem.load.value(t), "point value");
        if (z.breakpoint_index(t) || problem.load.breakpoint_index(t)) {
            probe(t, z.left_limit(t), problem.load.left_limit(t), "left limit");
            probe(t, z.right_limit(t), problem.load.right_limit(t), "right limit");
        }
    }
    report.conditions.push_back(make_condition("local_stability", stab, tol, stab_w));

    const auto gap = max_energy_gap(z, problem, grid);
    Witness gap_w{gap.t1, gap.t2, "energy inequality violated by " + fmt(gap.gap) + " for t1 = " + fmt(gap.t1) +
                                      ", t2 = " + fmt(gap.t2)};
    report.conditions.push_back(make_condition("energy_inequality", gap.gap, tol, gap_w));
    return report;
}

CheckReport check_differential(const PiecewisePath& z, const RISProblem& problem, double tol) {
    require_physical_domain(z, problem);
    const auto jumps = z.jump_times();
    if (!jumps.empty()) {
        throw PreconditionError("a differential solution cannot jump (first jump at t = " + fmt(jumps.front()) + ")");
    }
    CheckReport report;
    report.solution_concept = SolutionConcept::Differential;
    const auto& E = problem.energy;
    const PiecewisePath* paths[] = {&z, &problem.load};
    const auto bps = merged_breakpoints(paths, 0.0, problem.T);
    double worst = 0.0;
    Witness w;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double u = bps[i];
        const double v = bps[i + 1];
        const Vec zu = z.right_limit(u);
        const Vec zv = z.left_limit(v);
        const Vec lu = problem.load.right_limit(u);
        const Vec lv = problem.load.left_limit(v);
        const Vec rate = (zv - zu) / (v - u);
        for (double x : gauss_legendre16().nodes) {
            const double th = 0.5 * (x + 1.0);
            const Vec zt = (1.0 - th) * zu + th * zv;
            const Vec lt = (1.0 - th) * lu + th * lv;
            const double r = problem.R.dist_to_subdiff(rate, lt - E.gradient(zt));
            if (r > worst) {
                worst = r;
                w = {u, v, "dist(-DI, dR(z')) = " + fmt(r) + " at t = " + fmt(u + th * (v - u))};
            }
        }
    }
    report.conditions.push_back(make_condition("differential_inclusion", worst, tol, w));
    return report;
}

} // namespace rislab
