#pragma once

#include <string>
#include <vector>

#include "qpinn/diagnostics.hpp"
#include "qpinn/train.hpp"

namespace qpinn {

// Shortest decimal string that parses back to exactly the same double.
// Every number in every emitted artifact goes through this, which is what
// makes rerun outputs byte-comparable.
std::string format_double(double v);
double parse_double(const std::string& s);

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace);

// Solution table: reference and error columns appear only when a closed-form
// solution exists; the extrapolation flag column only in snapshot-driven
// solves, marking rows outside the training domain.
struct SolutionTable {
    int dim = 0;
    std::vector<double> t;
    std::vector<std::vector<double>> y_mac;  // one entry per t
    std::vector<std::vector<double>> y_ref;  // empty = no reference columns
    bool extrapolation_column = false;
    double domain_t0 = 0.0;
    double domain_t_end = 0.0;
};
void write_solution_csv(const std::string& path, const SolutionTable& table);

void write_sweep_csv(const std::string& path, const std::vector<GradientStats>& cells);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qpinn
