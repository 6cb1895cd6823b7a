#pragma once

#include "rislab/model.hpp"
#include "rislab/tuple.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rislab {

inline constexpr double kDefaultCheckTolerance = 1e-8;

enum class SolutionConcept { Differential, Local, NormalizedPbv, Relaxed };

std::string to_string(SolutionConcept c);
/// Accepts "differential", "local", "pbv"/"normalized_pbv" and "relaxed".
SolutionConcept parse_concept(const std::string& name);

/// Where a condition fails: an interval in s (tuple checks) or a pair
/// t1 ≤ t2 (physical-time checks), plus a readable explanation.
struct Witness {
    double lo = 0.0;
    double hi = 0.0;
    std::string description;
};

struct ConditionResult {
    std::string id;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::optional<Witness> witness;
};

struct CheckReport {
    SolutionConcept solution_concept = SolutionConcept::Relaxed;
    std::vector<ConditionResult> conditions;

    bool overall() const;
    const ConditionResult* find(const std::string& id) const;
    const ConditionResult& at(const std::string& id) const;
    double worst_residual() const;
    std::vector<std::string> failed_ids() const;

    std::string to_json(int indent = 2) const;
    std::string to_table() const;
};

/// Disjoint open intervals of (0, S) on which t̂ strictly increases.
struct IncreasingSet {
    std::vector<std::pair<double, double>> intervals;

    bool contains(double s) const;
    double measure() const;
};

IncreasingSet increasing_set(const LipschitzPath& t_hat);

/// Maximal closed intervals of positive length on which t̂ is constant.
std::vector<std::pair<double, double>> plateaus(const LipschitzPath& t_hat);

/// Conditions: endpoint, sign, complementarity, normalization,
/// energy_identity, load_compatibility. The load is problem.load.
CheckReport check_normalized_pbv(const ParametrizedTuple& tuple, const RISProblem& problem,
                                 double tol = kDefaultCheckTolerance);

/// As check_normalized_pbv, with load_compatibility replaced by
/// load_on_increasing_set (ℓ̂ = ℓ∘t̂ almost everywhere on the increasing set).
CheckReport check_relaxed(const ParametrizedTuple& tuple, const RISProblem& problem,
                          double tol = kDefaultCheckTolerance);

/// Conditions: local_stability and energy_inequality, evaluated on the grid
/// together with all breakpoints of z and ℓ and 16 Gauss nodes per piece.
CheckReport check_local(const PiecewisePath& z, const RISProblem& problem, double tol = kDefaultCheckTolerance,
                        std::span<const double> grid = {});

/// Condition differential_inclusion: sup of dist(-D_zI(t, z(t)), ∂R(ż(t)))
/// over Gauss nodes of every piece. Rejects paths with jumps.
CheckReport check_differential(const PiecewisePath& z, const RISProblem& problem,
                               double tol = kDefaultCheckTolerance);

/// Left side minus right side of the energy identity between s1 and s2.
double energy_residual(const ParametrizedTuple& tuple, const RISProblem& problem, double s1, double s2);

/// Sup over pieces of |t̂' + R(ẑ') + ‖ẑ'‖ dist(-D_zÎ, ∂R(0)) - 1|.
double normalization_residual(const ParametrizedTuple& tuple, const RISProblem& problem);

struct EnergyGap {
    double gap = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
};

/// max over sample pairs t1 ≤ t2 of I(t2, z(t2)) + Diss_R(z; [t1, t2]) - I(t1, z(t1)) + ∫ z dℓ.
/// Among maximizers the earliest t1 and then the earliest t2 are reported.
EnergyGap max_energy_gap(const PiecewisePath& z, const RISProblem& problem, std::span<const double> grid = {});

} // namespace rislab
