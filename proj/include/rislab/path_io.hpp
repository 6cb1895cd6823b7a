#pragma once

#include "rislab/paths.hpp"
#include "rislab/tuple.hpp"

#include <iosfwd>
#include <string>

namespace rislab {

/// One row per breakpoint: t, left_1..left_d, value_1..value_d, right_1..right_d.
/// Lines starting with '#' and blank lines are ignored on input.
void write_path_csv(const PiecewisePath& f, std::ostream& out);
void write_path_csv(const PiecewisePath& f, const std::string& file);
PiecewisePath read_path_csv(std::istream& in, const std::string& source = "<stream>");
PiecewisePath read_path_csv(const std::string& file);

/// Writes <prefix>_t_hat.csv, <prefix>_z_hat.csv and <prefix>_ell_hat.csv.
void write_tuple_csv(const ParametrizedTuple& tuple, const std::string& prefix);
ParametrizedTuple read_tuple_csv(const std::string& prefix);

} // namespace rislab
