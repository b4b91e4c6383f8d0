#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qpinn {

// Catalog entry selection plus optional overrides. Fields that do not apply
// to the chosen problem (lambda outside exp_decay, omega outside harmonic)
// are rejected rather than ignored.
struct ProblemSpec {
    std::string name;
    std::optional<double> lambda;
    std::optional<double> omega;
    std::optional<double> t0;
    std::optional<double> t_end;
    std::optional<int> collocation_points;
    std::optional<int> num_solution_points;
};

// First-order system y'(t) = f(t, y) on [t0, t_end] with initial value y0.
// `analytic` is present for catalog problems and drives reference columns and
// supervised samples; `collocation` is the residual grid (endpoints included).
struct ODEProblem {
    std::string name;
    int dim = 0;
    double t0 = 0.0;
    double t_end = 1.0;
    std::vector<double> y0;
    std::function<std::vector<double>(double, const std::vector<double>&)> rhs;
    std::function<std::vector<double>(double)> analytic;
    std::vector<double> collocation;
    std::vector<std::pair<double, std::vector<double>>> known_solutions;
    ProblemSpec spec;  // resolved origin, kept for snapshots

    bool has_analytic() const { return static_cast<bool>(analytic); }
};

// Uniform grid of `points` >= 2 values spanning [a, b], both endpoints kept.
std::vector<double> uniform_grid(double a, double b, int points);

std::vector<std::string> builtin_problem_names();

ODEProblem make_problem(const ProblemSpec& spec);

}  // namespace qpinn
