#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace rislab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Raised when an argument lies outside the domain of a path or problem.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Raised when an operation's documented precondition is violated.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by iterative solvers that fail to reach their tolerance.
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline Vec constant_vec(Eigen::Index dim, double value) { return Vec::Constant(dim, value); }

inline Vec scalar_vec(double value) { return Vec::Constant(1, value); }

} // namespace rislab
