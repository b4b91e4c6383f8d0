#include "qpinn/hybrid.hpp"

#include <string>

#include "qpinn/errors.hpp"
#include "qpinn/rng.hpp"

namespace qpinn {

void HybridModel::check_valid() const {
    mlp.check_valid();
    qnode.validate();
    if (qnode_params.size() != std::size_t(mlp.output_dim())) {
        throw ShapeError("model has " + std::to_string(qnode_params.size()) +
                         " QNode blocks for " + std::to_string(mlp.output_dim()) +
                         " outputs");
    }
    for (const auto& p : qnode_params) p.check_shape(qnode);
}

HybridModel init_hybrid_model(const std::vector<int>& hidden_widths, int output_dim,
                              Activation act, const QNodeConfig& qnode, Observable obs,
                              std::mt19937_64& rng) {
    if (output_dim < 1) {
        throw ShapeError("output_dim must be >= 1, got " + std::to_string(output_dim));
    }
    qnode.validate();
    HybridModel model;
    std::vector<int> widths = hidden_widths;
    widths.push_back(output_dim);
    model.mlp = init_mlp(widths, rng);
    model.activation = act;
    model.qnode = qnode;
    model.observable = obs;
    for (int j = 0; j < output_dim; ++j) {
        QNodeParams p = QNodeParams::zeros(qnode.depth, qnode.num_qubits);
        for (double& a : p.angles) a = uniform(rng, 0.0, 2.0 * kPi);
        model.qnode_params.push_back(std::move(p));
    }
    return model;
}

std::vector<double> qnode_expectations(const HybridModel& model) {
    model.check_valid();
    std::vector<double> e(model.qnode_params.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        e[j] = expectation(model.qnode, model.qnode_params[j], model.observable);
    }
    return e;
}

ModelEval eval_mac_cached(const HybridModel& model, double t,
                          std::span<const double> expectations) {
    if (expectations.size() != std::size_t(model.output_dim())) {
        throw ShapeError("got " + std::to_string(expectations.size()) +
                         " expectations for " + std::to_string(model.output_dim()) +
                         " outputs");
    }
    DualVec net = mlp_forward_dual(model.mlp, model.activation, t);
    ModelEval eval;
    eval.y_hat = std::move(net.value);
    eval.y_hat_dt = std::move(net.tangent);
    eval.expectation.assign(expectations.begin(), expectations.end());
    const std::size_t m = eval.y_hat.size();
    eval.y_mac.resize(m);
    eval.y_mac_dt.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        eval.y_mac[j] = (eval.y_hat[j] + 1.0) * eval.expectation[j];
        eval.y_mac_dt[j] = eval.y_hat_dt[j] * eval.expectation[j];
    }
    return eval;
}

ModelEval eval_mac(const HybridModel& model, double t) {
    return eval_mac_cached(model, t, qnode_expectations(model));
}

namespace {

void check_adjoints(const HybridModel& model, std::span<const double> adj_value,
                    std::span<const double> adj_deriv) {
    if (adj_value.size() != std::size_t(model.output_dim()) ||
        adj_deriv.size() != std::size_t(model.output_dim())) {
        throw ShapeError("adjoint length " + std::to_string(adj_value.size()) + "/" +
                         std::to_string(adj_deriv.size()) + " does not match " +
                         std::to_string(model.output_dim()) + " outputs");
    }
}

}  // namespace

std::vector<double> grad_classical(const HybridModel& model, double t,
                                   std::span<const double> adj_value,
                                   std::span<const double> adj_deriv) {
    model.check_valid();
    check_adjoints(model, adj_value, adj_deriv);
    // d y_j / d W = <O>_j * d yhat_j / d W, and likewise on the derivative
    // channel, so the expectations fold into the network adjoints.
    std::vector<double> e = qnode_expectations(model);
    std::vector<double> out_adj(e.size()), tan_adj(e.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        out_adj[j] = adj_value[j] * e[j];
        tan_adj[j] = adj_deriv[j] * e[j];
    }
    return mlp_backprop(model.mlp, model.activation, t, out_adj, tan_adj);
}

std::size_t model_parameter_count(const HybridModel& model) {
    std::size_t n = model.mlp.param_count();
    for (const auto& p : model.qnode_params) n += p.count();
    return n;
}

std::vector<double> pack_parameters(const HybridModel& model) {
    std::vector<double> flat = flatten(model.mlp);
    flat.reserve(model_parameter_count(model));
    for (const auto& p : model.qnode_params) {
        flat.insert(flat.end(), p.angles.begin(), p.angles.end());
    }
    return flat;
}

void unpack_parameters(HybridModel& model, std::span<const double> flat) {
    if (flat.size() != model_parameter_count(model)) {
        throw ShapeError("flat vector has " + std::to_string(flat.size()) +
                         " entries, model has " +
                         std::to_string(model_parameter_count(model)));
    }
    unflatten(model.mlp, flat.subspan(0, model.mlp.param_count()));
    std::size_t k = model.mlp.param_count();
    for (auto& p : model.qnode_params) {
        for (double& a : p.angles) a = flat[k++];
    }
}

std::vector<QNodeParams> grad_quantum(const HybridModel& model, double t,
                                      std::span<const double> adj_value,
                                      std::span<const double> adj_deriv) {
    model.check_valid();
    check_adjoints(model, adj_value, adj_deriv);
    DualVec net = mlp_forward_dual(model.mlp, model.activation, t);
    std::vector<QNodeParams> blocks;
    blocks.reserve(model.qnode_params.size());
    for (std::size_t j = 0; j < model.qnode_params.size(); ++j) {
        const double scale =
            adj_value[j] * (net.value[j] + 1.0) + adj_deriv[j] * net.tangent[j];
        QNodeParams g =
            grad_parameter_shift(model.qnode, model.qnode_params[j], model.observable);
        for (double& v : g.angles) v *= scale;
        blocks.push_back(std::move(g));
    }
    return blocks;
}

}  // namespace qpinn
