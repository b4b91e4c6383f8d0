#include "qpinn/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qpinn/errors.hpp"

namespace qpinn {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ConfigError("cannot parse '" + s + "' as a number");
    }
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace) {
    std::string s =
        "epoch,loss_total,loss_ic,loss_ode,loss_sol,grad_norm_classical,"
        "grad_norm_quantum\n";
    for (const auto& row : trace) {
        s += std::to_string(row.epoch);
        s += ',';
        s += format_double(row.loss.total);
        s += ',';
        s += format_double(row.loss.ic);
        s += ',';
        s += format_double(row.loss.ode);
        s += ',';
        s += format_double(row.loss.sol);
        s += ',';
        s += format_double(row.grad_norm_classical);
        s += ',';
        s += format_double(row.grad_norm_quantum);
        s += '\n';
    }
    write_file(path, s);
}

void write_solution_csv(const std::string& path, const SolutionTable& table) {
    const bool has_ref = !table.y_ref.empty();
    if (table.y_mac.size() != table.t.size() ||
        (has_ref && table.y_ref.size() != table.t.size())) {
        throw ShapeError("solution table rows do not match the time grid");
    }
    std::string s = "t";
    for (int j = 1; j <= table.dim; ++j) s += ",y_mac_" + std::to_string(j);
    if (has_ref) {
        for (int j = 1; j <= table.dim; ++j) s += ",y_ref_" + std::to_string(j);
        for (int j = 1; j <= table.dim; ++j) s += ",abs_err_" + std::to_string(j);
    }
    if (table.extrapolation_column) s += ",extrapolated";
    s += '\n';
    for (std::size_t i = 0; i < table.t.size(); ++i) {
        s += format_double(table.t[i]);
        for (int j = 0; j < table.dim; ++j) s += ',' + format_double(table.y_mac[i][j]);
        if (has_ref) {
            for (int j = 0; j < table.dim; ++j) s += ',' + format_double(table.y_ref[i][j]);
            for (int j = 0; j < table.dim; ++j) {
                s += ',' + format_double(std::abs(table.y_mac[i][j] - table.y_ref[i][j]));
            }
        }
        if (table.extrapolation_column) {
            const bool outside =
                table.t[i] < table.domain_t0 || table.t[i] > table.domain_t_end;
            s += outside ? ",1" : ",0";
        }
        s += '\n';
    }
    write_file(path, s);
}

void write_sweep_csv(const std::string& path, const std::vector<GradientStats>& cells) {
    std::string s =
        "n_qubits,depth,sample_count,var_component,mean_component,median_abs_norm,"
        "max_norm\n";
    for (const auto& c : cells) {
        s += std::to_string(c.n_qubits);
        s += ',';
        s += std::to_string(c.depth);
        s += ',';
        s += std::to_string(c.sample_count);
        s += ',';
        s += format_double(c.var_component);
        s += ',';
        s += format_double(c.mean_component);
        s += ',';
        s += format_double(c.median_abs_norm);
        s += ',';
        s += format_double(c.max_norm);
        s += '\n';
    }
    write_file(path, s);
}

}  // namespace qpinn
