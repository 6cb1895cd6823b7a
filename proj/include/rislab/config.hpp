#pragma once

#include "rislab/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rislab {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Command { Solve, Check, Construct, Counterexample1, Counterexample2, Sweep };

std::string to_string(Command c);
Command parse_command(const std::string& name);

struct RunConfig {
    std::optional<Command> command;
    /// Built-in problem: "ce1", "ce2" or "remark44".
    std::string problem_name = "ce2";
    /// Problem given explicitly in the config file (JSON text), overriding problem_name.
    std::optional<std::string> problem_json;
    /// "zero", "ce1:N", "ce2:N", "ce1-limit" or a path CSV file.
    std::optional<std::string> load;
    std::optional<int> n;
    double epsilon = 1e-3;
    std::optional<double> step;
    std::vector<double> epsilons;
    double tol = 1e-8;
    std::string out_dir;
    std::string solution_concept = "relaxed";
    std::optional<std::string> solution;
    std::optional<std::string> tuple;
    bool svg = false;

    /// Checks enum values, positivity of tolerances and that files exist.
    void validate() const;
};

/// Parses a JSON config. Syntax errors are reported with line and column.
RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
RunConfig parse_config_file(const std::string& path);

/// Builds a load from its textual spec on [0, T] with dimension `dim`.
PiecewisePath load_from_spec(const std::string& spec, double T, int dim);

/// Materializes the problem named or described in the config.
RISProblem build_problem(const RunConfig& config);

} // namespace rislab
