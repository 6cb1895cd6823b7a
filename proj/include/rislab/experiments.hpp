#pragma once

#include "rislab/checkers.hpp"
#include "rislab/model.hpp"
#include "rislab/tuple.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rislab {

inline const std::vector<int> kDefaultNs{1, 2, 4, 8, 16, 32};

/// R = |·|, E(z) = ½z² - z, z0 = 0, T = 2, with the given load.
RISProblem scalar_benchmark_problem(PiecewisePath load);

/// Ramp to ½ on [1, 1 + 1/n], constant afterwards.
PiecewisePath ce1_load(int n);
/// ℓ = 0 on [0, 1], ½ on (1, 2].
PiecewisePath ce1_limit_load();
/// Ramp to ½ on [1, 1 + 1/n], back to 0 from 1 + 1/n on.
PiecewisePath ce2_load(int n);

struct Counterexample1 {
    RISProblem problem;
    ParametrizedTuple tuple;
};

struct Counterexample1Limit {
    PiecewisePath load;
    ParametrizedTuple tuple;
};

struct Counterexample2 {
    RISProblem problem;
    ParametrizedTuple tuple;
    PiecewisePath z;   // physical-time solution
};

struct Counterexample2Limit {
    PiecewisePath load;   // ≡ 0
    ParametrizedTuple tuple;
    PiecewisePath z_tilde;
};

Counterexample1 counterexample1(int n);
Counterexample1Limit counterexample1_limit();
Counterexample2 counterexample2(int n);
Counterexample2Limit counterexample2_limit();

/// Physical-time state shared by both counterexamples for finite n.
PiecewisePath ramp_state(int n);
/// Pointwise limit of ramp_state with value `value_at_one` at t = 1.
PiecewisePath step_state(double value_at_one = 0.0);

struct Remark44 {
    RISProblem problem;
    ParametrizedTuple tuple;
};

/// Two-dimensional flat piece with ẑ' = (1, ½) under R(z) = ½|z1| + |z2|,
/// with ℓ̂ chosen as Aẑ + ẑ'/‖ẑ'‖² there.
Remark44 remark44_tuple();

struct LoadFamily {
    std::string name;
    std::function<PiecewisePath(int)> generator;
    PiecewisePath limit;
    ConvergenceMode declared;
};

struct ExactTupleFamily {
    std::function<ParametrizedTuple(int)> generator;
    ParametrizedTuple limit;
    std::function<PiecewisePath(int)> physical;   // may be empty
    std::optional<PiecewisePath> limit_physical;
};

struct CounterexampleSetup {
    RISProblem base;
    LoadFamily loads;
    ExactTupleFamily tuples;
};

CounterexampleSetup counterexample1_setup();
CounterexampleSetup counterexample2_setup();
/// ℓ_n ≡ ℓ0 with the stationary tuple; every concept holds.
CounterexampleSetup stationary_setup();

struct StabilityRow {
    std::string n;   // "limit" for the limit problem
    std::string solution_concept;
    bool passed = false;
    double worst_residual = 0.0;
    std::string witness;
};

struct StabilityReport {
    std::vector<StabilityRow> rows;
    ConvergenceDiagnostics load_diagnostics;
    ConvergenceDiagnostics ell_hat_diagnostics;
    ConvergenceDiagnostics t_hat_diagnostics;
    ConvergenceDiagnostics z_hat_diagnostics;
    bool load_mode_matches = false;

    const StabilityRow* find(const std::string& n, const std::string& solution_concept) const;
};

StabilityReport stability_experiment(const CounterexampleSetup& setup, const std::vector<int>& ns,
                                     double tol = kDefaultCheckTolerance);

struct SweepRow {
    double epsilon = 0.0;
    double step = 0.0;
    int n = 0;
    double S = 0.0;
    double sup_err_z = 0.0;
    double sup_err_t = 0.0;
    double normalization_residual = 0.0;
    double energy_residual = 0.0;
};

struct CrosscheckReport {
    std::vector<SweepRow> rows;
    /// err_{i+1} ≤ 1.1 err_i along the (decreasing) epsilons.
    bool monotone = false;
};

using StepRule = std::function<double(double)>;
inline double default_step_rule(double epsilon) { return epsilon / 10.0; }

/// Solves the viscous problem for every ε (in parallel), reparametrizes and
/// compares with `exact`.
CrosscheckReport viscous_crosscheck(const RISProblem& problem, const ParametrizedTuple& exact, int n,
                                    const std::vector<double>& epsilons, const StepRule& step_rule = default_step_rule);

/// Counterexample 1 or 2 (`which`) with ℓ_n.
CrosscheckReport viscous_crosscheck(int which, int n, const std::vector<double>& epsilons,
                                    const StepRule& step_rule = default_step_rule);

void write_stability_csv(const StabilityReport& report, const std::string& path);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Three stacked panels with t̂, ẑ (first component) and ℓ̂ (first component).
void write_tuple_svg(const ParametrizedTuple& tuple, const std::string& path, const std::string& title);

} // namespace rislab
