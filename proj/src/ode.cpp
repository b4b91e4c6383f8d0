#include "qpinn/ode.hpp"

#include <cmath>

#include "qpinn/errors.hpp"

namespace qpinn {

std::vector<double> uniform_grid(double a, double b, int points) {
    if (points < 2) {
        throw ConfigError("grid needs at least 2 points to include both endpoints, got " +
                          std::to_string(points));
    }
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) {
        g[i] = a + (b - a) * static_cast<double>(i) / (points - 1);
    }
    g.front() = a;
    g.back() = b;
    return g;
}

std::vector<std::string> builtin_problem_names() {
    return {"exp_decay", "harmonic", "logistic"};
}

namespace {

std::string catalog_list() {
    std::string s;
    for (const auto& n : builtin_problem_names()) {
        if (!s.empty()) s += ", ";
        s += n;
    }
    return s;
}

void reject_param(const std::optional<double>& value, const std::string& param,
                  const std::string& problem) {
    if (value.has_value()) {
        throw ConfigError("problem '" + problem + "' takes no parameter '" + param + "'");
    }
}

}  // namespace

ODEProblem make_problem(const ProblemSpec& spec) {
    ODEProblem p;
    p.name = spec.name;
    p.t0 = spec.t0.value_or(0.0);
    p.t_end = spec.t_end.value_or(1.0);
    if (!(std::isfinite(p.t0) && std::isfinite(p.t_end)) || p.t_end <= p.t0) {
        throw ConfigError("problem.t_end must exceed problem.t0, got [" +
                          std::to_string(p.t0) + ", " + std::to_string(p.t_end) + "]");
    }
    const int k = spec.collocation_points.value_or(32);
    if (k < 2) {
        throw ConfigError("problem.collocation_points must be >= 2, got " +
                          std::to_string(k));
    }
    const int sol_points = spec.num_solution_points.value_or(0);
    if (sol_points != 0 && sol_points < 2) {
        throw ConfigError("problem.num_solution_points must be 0 or >= 2, got " +
                          std::to_string(sol_points));
    }

    if (spec.name == "exp_decay") {
        const double lambda = spec.lambda.value_or(1.0);
        if (!std::isfinite(lambda)) throw ConfigError("problem.lambda must be finite");
        reject_param(spec.omega, "omega", spec.name);
        p.dim = 1;
        p.y0 = {1.0};
        p.rhs = [lambda](double, const std::vector<double>& y) {
            return std::vector<double>{-lambda * y[0]};
        };
        p.analytic = [lambda](double t) {
            return std::vector<double>{std::exp(-lambda * t)};
        };
    } else if (spec.name == "logistic") {
        reject_param(spec.lambda, "lambda", spec.name);
        reject_param(spec.omega, "omega", spec.name);
        p.dim = 1;
        p.y0 = {0.5};
        p.rhs = [](double, const std::vector<double>& y) {
            return std::vector<double>{y[0] * (1.0 - y[0])};
        };
        p.analytic = [](double t) {
            return std::vector<double>{1.0 / (1.0 + std::exp(-t))};
        };
    } else if (spec.name == "harmonic") {
        const double omega = spec.omega.value_or(1.0);
        if (!std::isfinite(omega)) throw ConfigError("problem.omega must be finite");
        reject_param(spec.lambda, "lambda", spec.name);
        p.dim = 2;
        p.y0 = {1.0, 0.0};
        p.rhs = [omega](double, const std::vector<double>& y) {
            return std::vector<double>{y[1], -omega * omega * y[0]};
        };
        p.analytic = [omega](double t) {
            return std::vector<double>{std::cos(omega * t), -omega * std::sin(omega * t)};
        };
    } else {
        throw ConfigError("unknown problem '" + spec.name + "'; valid names: " +
                          catalog_list());
    }

    p.collocation = uniform_grid(p.t0, p.t_end, k);
    if (sol_points > 0) {
        for (double t : uniform_grid(p.t0, p.t_end, sol_points)) {
            p.known_solutions.emplace_back(t, p.analytic(t));
        }
    }

    p.spec = spec;
    p.spec.lambda = spec.name == "exp_decay"
                        ? std::optional<double>(spec.lambda.value_or(1.0))
                        : std::nullopt;
    p.spec.omega = spec.name == "harmonic" ? std::optional<double>(spec.omega.value_or(1.0))
                                           : std::nullopt;
    p.spec.t0 = p.t0;
    p.spec.t_end = p.t_end;
    p.spec.collocation_points = k;
    p.spec.num_solution_points = sol_points;
    return p;
}

}  // namespace qpinn
