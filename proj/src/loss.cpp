#include "qpinn/loss.hpp"

#include <cmath>
#include <string>

#include "qpinn/errors.hpp"
#include "qpinn/parallel.hpp"

namespace qpinn {

namespace {

double sq_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw ShapeError("trajectory returned " + std::to_string(a.size()) +
                         " components, problem has " + std::to_string(b.size()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

std::vector<double> checked_rhs(const ODEProblem& problem, double t,
                                const std::vector<double>& y) {
    std::vector<double> f = problem.rhs(t, y);
    if (f.size() != std::size_t(problem.dim)) {
        throw ShapeError("rhs returned " + std::to_string(f.size()) +
                         " components, problem has " + std::to_string(problem.dim));
    }
    for (double v : f) {
        if (!std::isfinite(v)) {
            throw NumericError("rhs is non-finite at t_k = " + std::to_string(t));
        }
    }
    return f;
}

}  // namespace

Trajectory model_trajectory(const HybridModel& model) {
    std::vector<double> e = qnode_expectations(model);
    return [model, e = std::move(e)](double t) {
        ModelEval ev = eval_mac_cached(model, t, e);
        return TrajectoryEval{std::move(ev.y_mac), std::move(ev.y_mac_dt)};
    };
}

Trajectory analytic_trajectory(const ODEProblem& problem) {
    if (!problem.has_analytic()) {
        throw ConfigError("problem '" + problem.name + "' has no closed-form solution");
    }
    return [&problem](double t) {
        std::vector<double> y = problem.analytic(t);
        std::vector<double> dy = problem.rhs(t, y);
        return TrajectoryEval{std::move(y), std::move(dy)};
    };
}

double loss_ic(const Trajectory& traj, const ODEProblem& problem) {
    return sq_norm_diff(traj(problem.t0).value, problem.y0);
}

double loss_ode(const Trajectory& traj, const ODEProblem& problem) {
    const std::size_t k = problem.collocation.size();
    std::vector<double> term(k, 0.0);
    parallel_for_tasks(k, [&](std::size_t i) {
        const double t = problem.collocation[i];
        TrajectoryEval ev = traj(t);
        term[i] = sq_norm_diff(ev.derivative, checked_rhs(problem, t, ev.value));
    });
    double s = 0.0;
    for (double v : term) s += v;
    return s;
}

double loss_sol(const Trajectory& traj, const ODEProblem& problem) {
    const std::size_t k = problem.known_solutions.size();
    std::vector<double> term(k, 0.0);
    parallel_for_tasks(k, [&](std::size_t i) {
        const auto& [t, y_ref] = problem.known_solutions[i];
        term[i] = sq_norm_diff(traj(t).value, y_ref);
    });
    double s = 0.0;
    for (double v : term) s += v;
    return s;
}

LossBreakdown composite_loss(const Trajectory& traj, const ODEProblem& problem,
                             const LossWeights& weights) {
    LossBreakdown b;
    b.ic = loss_ic(traj, problem);
    b.ode = loss_ode(traj, problem);
    b.sol_skipped = problem.known_solutions.empty();
    b.sol = b.sol_skipped ? 0.0 : loss_sol(traj, problem);
    b.total = weights.ic * b.ic + weights.ode * b.ode + weights.sol * b.sol;
    return b;
}

LossBreakdown composite_loss(const HybridModel& model, const ODEProblem& problem,
                             const LossWeights& weights) {
    return composite_loss(model_trajectory(model), problem, weights);
}

LossAndGrad total_loss_and_grad(const HybridModel& model, const ODEProblem& problem,
                                const LossWeights& weights) {
    model.check_valid();
    const int m = model.output_dim();
    if (m != problem.dim) {
        throw ShapeError("model has " + std::to_string(m) + " outputs, problem has " +
                         std::to_string(problem.dim));
    }
    if (problem.y0.size() != std::size_t(problem.dim)) {
        throw ShapeError("problem.y0 has " + std::to_string(problem.y0.size()) +
                         " components, problem has " + std::to_string(problem.dim));
    }

    const std::vector<double> e = qnode_expectations(model);

    // One record per scored time point: its loss contribution plus the value-
    // and derivative-channel adjoints of the weighted loss at that point.
    struct Record {
        double t = 0.0;
        double loss = 0.0;
        int channel = 0;  // 0 = ic, 1 = ode, 2 = sol
        std::vector<double> adj_value, adj_deriv;
        std::vector<double> y_hat, y_hat_dt;
    };
    const std::size_t n_ode = problem.collocation.size();
    const std::size_t n_sol = problem.known_solutions.size();
    std::vector<Record> records(1 + n_ode + n_sol);

    parallel_for_tasks(records.size(), [&](std::size_t idx) {
        Record& rec = records[idx];
        rec.adj_value.assign(m, 0.0);
        rec.adj_deriv.assign(m, 0.0);
        if (idx == 0) {
            rec.channel = 0;
            rec.t = problem.t0;
            ModelEval ev = eval_mac_cached(model, rec.t, e);
            for (int j = 0; j < m; ++j) {
                const double d = ev.y_mac[j] - problem.y0[j];
                rec.loss += d * d;
                rec.adj_value[j] = 2.0 * weights.ic * d;
            }
            rec.y_hat = std::move(ev.y_hat);
            rec.y_hat_dt = std::move(ev.y_hat_dt);
        } else if (idx <= n_ode) {
            rec.channel = 1;
            rec.t = problem.collocation[idx - 1];
            ModelEval ev = eval_mac_cached(model, rec.t, e);
            const std::vector<double> f = checked_rhs(problem, rec.t, ev.y_mac);
            std::vector<double> r(m);
            for (int j = 0; j < m; ++j) {
                r[j] = ev.y_mac_dt[j] - f[j];
                rec.loss += r[j] * r[j];
                rec.adj_deriv[j] = 2.0 * weights.ode * r[j];
            }
            // Cross term -2 w (df/dy)^T r, contracted column by column with
            // central differences in y.
            double ynorm = 0.0;
            for (double v : ev.y_mac) ynorm += v * v;
            const double h = 1e-6 * (1.0 + std::sqrt(ynorm));
            std::vector<double> yp = ev.y_mac;
            for (int i = 0; i < m; ++i) {
                const double saved = yp[i];
                yp[i] = saved + h;
                const std::vector<double> fp = checked_rhs(problem, rec.t, yp);
                yp[i] = saved - h;
                const std::vector<double> fm = checked_rhs(problem, rec.t, yp);
                yp[i] = saved;
                double contract = 0.0;
                for (int j = 0; j < m; ++j) {
                    contract += r[j] * (fp[j] - fm[j]) / (2.0 * h);
                }
                rec.adj_value[i] = -2.0 * weights.ode * contract;
            }
            rec.y_hat = std::move(ev.y_hat);
            rec.y_hat_dt = std::move(ev.y_hat_dt);
        } else {
            rec.channel = 2;
            const auto& [t, y_ref] = problem.known_solutions[idx - 1 - n_ode];
            rec.t = t;
            ModelEval ev = eval_mac_cached(model, rec.t, e);
            for (int j = 0; j < m; ++j) {
                const double d = ev.y_mac[j] - y_ref[j];
                rec.loss += d * d;
                rec.adj_value[j] = 2.0 * weights.sol * d;
            }
            rec.y_hat = std::move(ev.y_hat);
            rec.y_hat_dt = std::move(ev.y_hat_dt);
        }
    });

    LossAndGrad out;
    out.breakdown.sol_skipped = n_sol == 0;
    for (const Record& rec : records) {
        if (rec.channel == 0) out.breakdown.ic += rec.loss;
        if (rec.channel == 1) out.breakdown.ode += rec.loss;
        if (rec.channel == 2) out.breakdown.sol += rec.loss;
    }
    out.breakdown.total = weights.ic * out.breakdown.ic + weights.ode * out.breakdown.ode +
                          weights.sol * out.breakdown.sol;

    // Classical gradients per record (slot writes), combined in record order.
    std::vector<std::vector<double>> cgrads(records.size());
    parallel_for_tasks(records.size(), [&](std::size_t idx) {
        const Record& rec = records[idx];
        std::vector<double> out_adj(m), tan_adj(m);
        for (int j = 0; j < m; ++j) {
            out_adj[j] = rec.adj_value[j] * e[j];
            tan_adj[j] = rec.adj_deriv[j] * e[j];
        }
        cgrads[idx] = mlp_backprop(model.mlp, model.activation, rec.t, out_adj, tan_adj);
    });
    out.grad_classical.assign(model.mlp.param_count(), 0.0);
    for (const auto& g : cgrads) {
        for (std::size_t i = 0; i < g.size(); ++i) out.grad_classical[i] += g[i];
    }

    // Quantum blocks: the angle gradient is t independent, so the coupling
    // coefficients accumulate over records and scale one shift evaluation.
    std::vector<double> scale(m, 0.0);
    for (const Record& rec : records) {
        for (int j = 0; j < m; ++j) {
            scale[j] += rec.adj_value[j] * (rec.y_hat[j] + 1.0) +
                        rec.adj_deriv[j] * rec.y_hat_dt[j];
        }
    }
    out.grad_quantum.reserve(m);
    for (int j = 0; j < m; ++j) {
        QNodeParams g =
            grad_parameter_shift(model.qnode, model.qnode_params[j], model.observable);
        for (double& v : g.angles) v *= scale[j];
        out.grad_quantum.push_back(std::move(g));
    }
    return out;
}

}  // namespace qpinn
