#include "rislab/checkers.hpp"
#include "rislab/construction.hpp"
#include "rislab/experiments.hpp"
#include "rislab/path_io.hpp"
#include "rislab/viscous_solver.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

namespace py = pybind11;
using namespace rislab;

namespace {

py::object report_to_dict(const CheckReport& r) {
    return py::module_::import("json").attr("loads")(r.to_json(-1));
}

PiecewisePath path_from_arrays(std::vector<double> t, const Mat& left, const Mat& value, const Mat& right) {
    const auto n = static_cast<Eigen::Index>(t.size());
    if (left.rows() != n || value.rows() != n || right.rows() != n) {
        throw PreconditionError("node arrays need one row per breakpoint");
    }
    std::vector<Node> nodes;
    for (Eigen::Index k = 0; k < n; ++k) {
        nodes.push_back(Node{left.row(k).transpose(), value.row(k).transpose(), right.row(k).transpose()});
    }
    return PiecewisePath(std::move(t), std::move(nodes));
}

Mat stack(const std::vector<Node>& nodes, Vec Node::*member) {
    Mat out(static_cast<Eigen::Index>(nodes.size()), nodes.empty() ? 0 : (nodes.front().*member).size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        out.row(static_cast<Eigen::Index>(k)) = (nodes[k].*member).transpose();
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_rislab, m) {
    m.doc() = "Rate-independent systems with BV loads";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<Dissipation>(m, "Dissipation")
        .def_static("scaled_norm", &Dissipation::scaled_norm, py::arg("dim"), py::arg("alpha"))
        .def_static("weighted_l1", &Dissipation::weighted_l1, py::arg("weights"))
        .def_static("polyhedral", &Dissipation::polyhedral, py::arg("vertices"))
        .def_property_readonly("dim", &Dissipation::dim)
        .def_property_readonly("lower_constant", &Dissipation::lower_constant)
        .def_property_readonly("upper_constant", &Dissipation::upper_constant)
        .def_property_readonly("symmetric", &Dissipation::symmetric)
        .def("__call__", &Dissipation::eval)
        .def("project_subdiff0", &Dissipation::project_subdiff0)
        .def("dist_to_subdiff0", &Dissipation::dist_to_subdiff0)
        .def("dist_to_subdiff", &Dissipation::dist_to_subdiff, py::arg("v"), py::arg("w"))
        .def("prox", &Dissipation::prox, py::arg("v"), py::arg("lam"))
        .def("__repr__", &Dissipation::describe);

    py::class_<PiecewisePath>(m, "PiecewisePath")
        .def(py::init(&path_from_arrays), py::arg("t"), py::arg("left"), py::arg("value"), py::arg("right"))
        .def_static("interpolate", &PiecewisePath::interpolate, py::arg("t"), py::arg("values"))
        .def_static("scalar", &PiecewisePath::scalar, py::arg("t"), py::arg("values"))
        .def_property_readonly("dim", &PiecewisePath::dim)
        .def_property_readonly("a", &PiecewisePath::a)
        .def_property_readonly("b", &PiecewisePath::b)
        .def_property_readonly("breakpoints", &PiecewisePath::breakpoints)
        .def_property_readonly("left", [](const PiecewisePath& f) { return stack(f.nodes(), &Node::left); })
        .def_property_readonly("value", [](const PiecewisePath& f) { return stack(f.nodes(), &Node::value); })
        .def_property_readonly("right", [](const PiecewisePath& f) { return stack(f.nodes(), &Node::right); })
        .def("__call__", &PiecewisePath::value)
        .def("left_limit", &PiecewisePath::left_limit)
        .def("right_limit", &PiecewisePath::right_limit)
        .def("jump_times", &PiecewisePath::jump_times, py::arg("tol") = 0.0);

    m.def("total_variation", py::overload_cast<const PiecewisePath&>(&total_variation));
    m.def("dissipation", &dissipation, py::arg("R"), py::arg("z"), py::arg("t1"), py::arg("t2"));
    m.def("kurzweil_stieltjes", &kurzweil_stieltjes, py::arg("z"), py::arg("ell"), py::arg("t1"), py::arg("t2"));
    m.def("sup_distance", &sup_distance);
    m.def("l1_distance", &l1_distance);

    py::class_<ParametrizedTuple>(m, "ParametrizedTuple")
        .def_readonly("S", &ParametrizedTuple::S)
        .def_property_readonly("t_hat", [](const ParametrizedTuple& t) { return t.t_hat.path(); })
        .def_property_readonly("z_hat", [](const ParametrizedTuple& t) { return t.z_hat.path(); })
        .def_readonly("ell_hat", &ParametrizedTuple::ell_hat);

    py::class_<RISProblem>(m, "RISProblem")
        .def_property_readonly("dim", &RISProblem::dim)
        .def_readonly("T", &RISProblem::T)
        .def_readonly("load", &RISProblem::load)
        .def_readonly("z0", &RISProblem::z0)
        .def("with_load", &RISProblem::with_load);

    m.def("scalar_benchmark_problem", &scalar_benchmark_problem, py::arg("load"));
    m.def(
        "quadratic_problem",
        [](const Mat& A, const Vec& b, const Dissipation& R, const PiecewisePath& load, const Vec& z0, double T) {
            const Nonlinearity F = b.isZero() ? Nonlinearity::zero(static_cast<int>(b.size())) : Nonlinearity::linear(b);
            return RISProblem(EnergyModel(A, F), R, load, z0, load.value(0.0), T);
        },
        py::arg("A"), py::arg("b"), py::arg("R"), py::arg("load"), py::arg("z0"), py::arg("T"),
        "Problem with E(z) = 1/2 <Az, z> + <b, z>.");
    m.def("ce1_load", &ce1_load);
    m.def("ce2_load", &ce2_load);
    m.def("ce1_limit_load", &ce1_limit_load);
    m.def("counterexample1_tuple", [](int n) { return counterexample1(n).tuple; });
    m.def("counterexample2_tuple", [](int n) { return counterexample2(n).tuple; });
    m.def("ramp_state", &ramp_state);
    m.def("step_state", &step_state, py::arg("value_at_one") = 0.0);

    m.def(
        "check",
        [](const std::string& concept_name, py::object solution, const RISProblem& problem, double tol) {
            const auto c = parse_concept(concept_name);
            switch (c) {
            case SolutionConcept::Local:
                return report_to_dict(check_local(solution.cast<PiecewisePath>(), problem, tol));
            case SolutionConcept::Differential:
                return report_to_dict(check_differential(solution.cast<PiecewisePath>(), problem, tol));
            case SolutionConcept::NormalizedPbv:
                return report_to_dict(check_normalized_pbv(solution.cast<ParametrizedTuple>(), problem, tol));
            case SolutionConcept::Relaxed:
                break;
            }
            return report_to_dict(check_relaxed(solution.cast<ParametrizedTuple>(), problem, tol));
        },
        py::arg("concept"), py::arg("solution"), py::arg("problem"), py::arg("tol") = kDefaultCheckTolerance);

    m.def(
        "solve_viscous",
        [](const RISProblem& problem, double epsilon, double step) {
            const auto traj = solve_viscous(problem, epsilon, step);
            return py::make_tuple(traj.as_path(), reparametrize(traj, problem));
        },
        py::arg("problem"), py::arg("epsilon"), py::arg("step"),
        "Returns the discrete trajectory and its arc-length reparametrization.");

    m.def(
        "construct_relaxed",
        [](const PiecewisePath& z, const RISProblem& problem, double tol) {
            auto r = construct_relaxed_from_local(z, problem, tol);
            return py::make_tuple(r.tuple, report_to_dict(r.relaxed_report));
        },
        py::arg("z"), py::arg("problem"), py::arg("tol") = kDefaultCheckTolerance);

    m.def("read_path_csv", py::overload_cast<const std::string&>(&read_path_csv));
    m.def("write_path_csv", py::overload_cast<const PiecewisePath&, const std::string&>(&write_path_csv));
}
