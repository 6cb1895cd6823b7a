#include "rislab/config.hpp"

#include "rislab/experiments.hpp"
#include "rislab/path_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace rislab {
namespace {

using json = nlohmann::json;

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Vec vec_from(const json& j, const char* what) {
    if (j.is_number()) {
        return scalar_vec(j.get<double>());
    }
    if (!j.is_array() || j.empty()) {
        throw ConfigError(std::string(what) + " must be a number or a nonempty array");
    }
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = j.at(i).get<double>();
    }
    return v;
}

Mat matrix_from(const json& j) {
    if (j.is_number()) {
        return Mat::Constant(1, 1, j.get<double>());
    }
    if (!j.is_array() || j.empty()) {
        throw ConfigError("A must be a row-major list of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    Mat A(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
            throw ConfigError("A must be square");
        }
        for (Eigen::Index c = 0; c < rows; ++c) {
            A(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
        }
    }
    return A;
}

Dissipation dissipation_from(const json& j, int dim) {
    const std::string kind = j.value("kind", "scaled_norm");
    if (kind == "scaled_norm") {
        return Dissipation::scaled_norm(dim, j.value("alpha", 1.0));
    }
    if (kind == "weighted_l1") {
        return Dissipation::weighted_l1(vec_from(j.at("weights"), "weights"));
    }
    if (kind == "polyhedral") {
        std::vector<Vec> verts;
        for (const auto& v : j.at("vertices")) {
            verts.push_back(vec_from(v, "vertex"));
        }
        return Dissipation::polyhedral(std::move(verts));
    }
    throw ConfigError("unknown dissipation kind '" + kind + "'");
}

Nonlinearity nonlinearity_from(const json& j, int dim) {
    if (j.is_null()) {
        return Nonlinearity::zero(dim);
    }
    const std::string kind = j.value("kind", "zero");
    if (kind == "zero") {
        return Nonlinearity::zero(dim);
    }
    if (kind == "linear") {
        return Nonlinearity::linear(vec_from(j.at("b"), "b"));
    }
    if (kind == "double_well") {
        return Nonlinearity::double_well(dim, j.value("kappa", 1.0));
    }
    if (kind == "polynomial") {
        return Nonlinearity::polynomial(dim, j.at("coefficients").get<std::vector<double>>());
    }
    throw ConfigError("unknown nonlinearity kind '" + kind + "'");
}

PiecewisePath load_from_json(const json& j, double T, int dim) {
    if (j.is_string()) {
        return load_from_spec(j.get<std::string>(), T, dim);
    }
    if (j.is_object() && j.contains("file")) {
        return read_path_csv(j.at("file").get<std::string>());
    }
    if (j.is_object() && j.contains("times")) {
        const auto times = j.at("times").get<std::vector<double>>();
        std::vector<Vec> values;
        for (const auto& v : j.at("values")) {
            values.push_back(vec_from(v, "load value"));
        }
        return PiecewisePath::interpolate(times, values);
    }
    throw ConfigError("load must be a spec string, {\"file\": ...} or {\"times\": ..., \"values\": ...}");
}

RISProblem problem_from_json(const json& j) {
    const auto& e = j.at("energy");
    Mat A = matrix_from(e.at("A"));
    const int dim = static_cast<int>(A.rows());
    std::optional<double> q;
    if (e.contains("growth_q")) {
        q = e.at("growth_q").get<double>();
    }
    EnergyModel energy(std::move(A), nonlinearity_from(e.value("F", json()), dim), q);
    Dissipation R = dissipation_from(j.value("dissipation", json::object()), dim);
    const double T = j.value("T", 1.0);
    PiecewisePath load = load_from_json(j.value("load", json("zero")), T, dim);
    Vec z0 = j.contains("z0") ? vec_from(j.at("z0"), "z0") : Vec::Zero(dim);
    Vec ell0 = j.contains("ell0") ? vec_from(j.at("ell0"), "ell0") : load.value(0.0);
    return RISProblem(std::move(energy), std::move(R), std::move(load), std::move(z0), std::move(ell0), T);
}

int parse_index(const std::string& s, const std::string& spec) {
    try {
        std::size_t used = 0;
        const int n = std::stoi(s, &used);
        if (used == s.size() && n >= 1) {
            return n;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("bad index in load spec '" + spec + "'");
}

} // namespace

std::string to_string(Command c) {
    switch (c) {
    case Command::Solve:
        return "solve";
    case Command::Check:
        return "check";
    case Command::Construct:
        return "construct";
    case Command::Counterexample1:
        return "counterexample1";
    case Command::Counterexample2:
        return "counterexample2";
    case Command::Sweep:
        return "sweep";
    }
    return "unknown";
}

Command parse_command(const std::string& name) {
    for (Command c : {Command::Solve, Command::Check, Command::Construct, Command::Counterexample1,
                      Command::Counterexample2, Command::Sweep}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    throw ConfigError("unknown command '" + name + "'");
}

void RunConfig::validate() const {
    if (!(tol > 0.0)) {
        throw ConfigError("tolerance must be positive");
    }
    if (!(epsilon > 0.0)) {
        throw ConfigError("epsilon must be positive");
    }
    if (step && !(*step > 0.0)) {
        throw ConfigError("step must be positive");
    }
    for (double e : epsilons) {
        if (!(e > 0.0)) {
            throw ConfigError("epsilons must be positive");
        }
    }
    if (n && *n < 1) {
        throw ConfigError("n must be at least 1");
    }
    if (!problem_json && problem_name != "ce1" && problem_name != "ce2" && problem_name != "remark44") {
        throw ConfigError("unknown problem '" + problem_name + "' (expected ce1, ce2 or remark44)");
    }
    try {
        parse_concept(solution_concept);
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
    if (solution && !std::filesystem::exists(*solution)) {
        throw ConfigError("solution file '" + *solution + "' does not exist");
    }
    if (tuple && !std::filesystem::exists(*tuple + "_t_hat.csv")) {
        throw ConfigError("tuple files '" + *tuple + "_*.csv' do not exist");
    }
}

RunConfig parse_config_text(const std::string& text, const std::string& source) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ConfigError(source + ": configuration is empty");
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte);
        std::ostringstream os;
        os << source << ":" << line << ":" << col << ": " << e.what();
        throw ConfigError(os.str());
    }
    if (!j.is_object()) {
        throw ConfigError(source + ": configuration must be a JSON object");
    }
    static const std::set<std::string> known{"command", "problem", "load", "n",     "solver", "tolerance",
                                             "out",     "concept", "solution", "tuple", "svg"};
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw ConfigError(source + ": unknown key '" + key + "'");
        }
    }
    RunConfig c;
    try {
        if (j.contains("command")) {
            c.command = parse_command(j.at("command").get<std::string>());
        }
        if (j.contains("problem")) {
            const auto& p = j.at("problem");
            if (p.is_string()) {
                c.problem_name = p.get<std::string>();
            } else {
                c.problem_json = p.dump();
            }
        }
        if (j.contains("load")) {
            c.load = j.at("load").get<std::string>();
        }
        if (j.contains("n")) {
            c.n = j.at("n").get<int>();
        }
        if (j.contains("solver")) {
            const auto& s = j.at("solver");
            c.epsilon = s.value("epsilon", c.epsilon);
            if (s.contains("step")) {
                c.step = s.at("step").get<double>();
            }
            if (s.contains("epsilons")) {
                c.epsilons = s.at("epsilons").get<std::vector<double>>();
            }
        }
        c.tol = j.value("tolerance", c.tol);
        c.out_dir = j.value("out", c.out_dir);
        c.solution_concept = j.value("concept", c.solution_concept);
        if (j.contains("solution")) {
            c.solution = j.at("solution").get<std::string>();
        }
        if (j.contains("tuple")) {
            c.tuple = j.at("tuple").get<std::string>();
        }
        c.svg = j.value("svg", false);
    } catch (const json::exception& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

PiecewisePath load_from_spec(const std::string& spec, double T, int dim) {
    if (spec == "zero") {
        return PiecewisePath::constant(0.0, T, Vec::Zero(dim));
    }
    if (spec == "ce1-limit") {
        return ce1_limit_load();
    }
    if (spec.rfind("ce1:", 0) == 0) {
        return ce1_load(parse_index(spec.substr(4), spec));
    }
    if (spec.rfind("ce2:", 0) == 0) {
        return ce2_load(parse_index(spec.substr(4), spec));
    }
    if (std::filesystem::exists(spec)) {
        return read_path_csv(spec);
    }
    throw ConfigError("unknown load spec '" + spec + "' (expected zero, ce1:N, ce2:N, ce1-limit or a file)");
}

RISProblem build_problem(const RunConfig& config) {
    try {
        if (config.problem_json) {
            json j = json::parse(*config.problem_json);
            if (config.load) {
                j["load"] = *config.load;
            }
            return problem_from_json(j);
        }
        if (config.problem_name == "remark44") {
            return remark44_tuple().problem;
        }
        const int n = config.n.value_or(4);
        std::string spec = config.load.value_or(config.problem_name == "ce1" ? "ce1:" + std::to_string(n)
                                                                             : "ce2:" + std::to_string(n));
        return scalar_benchmark_problem(load_from_spec(spec, 2.0, 1));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid problem description: ") + e.what());
    }
}

} // namespace rislab
