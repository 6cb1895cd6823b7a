#include "rislab/path_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rislab {
namespace {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<double> split_numbers(const std::string& line, const std::string& source, int line_no) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) {
                ++used;
            }
            if (used != cell.size()) {
                throw std::invalid_argument(cell);
            }
        } catch (const std::exception&) {
            throw PreconditionError(source + ":" + std::to_string(line_no) + ": cannot parse '" + cell + "' as a number");
        }
    }
    return out;
}

} // namespace

void write_path_csv(const PiecewisePath& f, std::ostream& out) {
    const int d = f.dim();
    out << 't';
    for (const char* part : {"left", "value", "right"}) {
        for (int i = 1; i <= d; ++i) {
            out << ',' << part << '_' << i;
        }
    }
    out << '\n';
    for (std::size_t k = 0; k < f.breakpoints().size(); ++k) {
        const auto& n = f.nodes()[k];
        out << format_double(f.breakpoints()[k]);
        for (const Vec* v : {&n.left, &n.value, &n.right}) {
            for (int i = 0; i < d; ++i) {
                out << ',' << format_double((*v)(i));
            }
        }
        out << '\n';
    }
}

void write_path_csv(const PiecewisePath& f, const std::string& file) {
    std::ofstream out(file);
    if (!out) {
        throw std::runtime_error("cannot write " + file);
    }
    write_path_csv(f, out);
}

PiecewisePath read_path_csv(std::istream& in, const std::string& source) {
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    std::vector<double> ts;
    std::vector<Node> nodes;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        if (!header_seen && line[first] == 't') {
            header_seen = true;
            continue;
        }
        auto row = split_numbers(line, source, line_no);
        if (width == 0) {
            width = row.size();
            if (width < 4 || (width - 1) % 3 != 0) {
                throw PreconditionError(source + ":" + std::to_string(line_no) +
                                        ": expected 1 + 3d columns, found " + std::to_string(width));
            }
        } else if (row.size() != width) {
            throw PreconditionError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(width) +
                                    " columns, found " + std::to_string(row.size()));
        }
        const auto d = static_cast<Eigen::Index>((width - 1) / 3);
        Node n{Vec(d), Vec(d), Vec(d)};
        for (Eigen::Index i = 0; i < d; ++i) {
            n.left(i) = row[1 + i];
            n.value(i) = row[1 + d + i];
            n.right(i) = row[1 + 2 * d + i];
        }
        ts.push_back(row[0]);
        nodes.push_back(std::move(n));
    }
    if (ts.size() < 2) {
        throw PreconditionError(source + ": a path file needs at least two rows");
    }
    return PiecewisePath(std::move(ts), std::move(nodes));
}

PiecewisePath read_path_csv(const std::string& file) {
    std::ifstream in(file);
    if (!in) {
        throw PreconditionError("cannot open " + file);
    }
    return read_path_csv(in, file);
}

void write_tuple_csv(const ParametrizedTuple& tuple, const std::string& prefix) {
    write_path_csv(tuple.t_hat.path(), prefix + "_t_hat.csv");
    write_path_csv(tuple.z_hat.path(), prefix + "_z_hat.csv");
    write_path_csv(tuple.ell_hat, prefix + "_ell_hat.csv");
}

ParametrizedTuple read_tuple_csv(const std::string& prefix) {
    LipschitzPath t_hat(read_path_csv(prefix + "_t_hat.csv"));
    LipschitzPath z_hat(read_path_csv(prefix + "_z_hat.csv"));
    PiecewisePath ell_hat = read_path_csv(prefix + "_ell_hat.csv");
    const double S = t_hat.b();
    return ParametrizedTuple(S, std::move(t_hat), std::move(z_hat), std::move(ell_hat));
}

} // namespace rislab
