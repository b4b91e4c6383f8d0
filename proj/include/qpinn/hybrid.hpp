#pragma once

#include <random>
#include <span>
#include <vector>

#include "qpinn/mlp.hpp"
#include "qpinn/qnode.hpp"

namespace qpinn {

// Hybrid model: a classical network with M outputs coupled multiplicatively
// and additively to M independent QNodes that share one circuit structure,
//   y_j(t) = (yhat_j(t) + 1) * <O>_j.
// The QNode expectations carry no t dependence, so
//   dy_j/dt = yhat_j'(t) * <O>_j.
struct HybridModel {
    MLPParams mlp;
    Activation activation = Activation::tanh;
    QNodeConfig qnode;
    Observable observable = Observable::z_sum;
    std::vector<QNodeParams> qnode_params;  // one angle grid per output j

    int output_dim() const { return mlp.output_dim(); }
    void check_valid() const;
};

// Fresh model with Glorot-initialized network and QNode angles uniform on
// [0, 2*pi), drawn in order (network first, then block j = 0, 1, ...).
HybridModel init_hybrid_model(const std::vector<int>& hidden_widths, int output_dim,
                              Activation act, const QNodeConfig& qnode, Observable obs,
                              std::mt19937_64& rng);

struct ModelEval {
    std::vector<double> y_hat;       // network outputs
    std::vector<double> y_hat_dt;    // network d/dt
    std::vector<double> expectation; // <O>_j per output
    std::vector<double> y_mac;       // coupled outputs
    std::vector<double> y_mac_dt;    // coupled d/dt
};

// All QNode expectations of the model, in output order.
std::vector<double> qnode_expectations(const HybridModel& model);

ModelEval eval_mac(const HybridModel& model, double t);

// Same, reusing expectations computed once by the caller (they are constant
// in t, so trajectory sweeps avoid re-simulating the circuits).
ModelEval eval_mac_cached(const HybridModel& model, double t,
                          std::span<const double> expectations);

// Gradient w.r.t. the flat network parameters of
//   sum_j adj_value[j] * y_j(t) + adj_deriv[j] * dy_j/dt(t).
std::vector<double> grad_classical(const HybridModel& model, double t,
                                   std::span<const double> adj_value,
                                   std::span<const double> adj_deriv);

// Gradient of the same scalar w.r.t. each QNode's angles. Block j factorizes
// as (adj_value[j] * (yhat_j + 1) + adj_deriv[j] * yhat_j') * grad<O>_j; blocks
// never mix across j.
std::vector<QNodeParams> grad_quantum(const HybridModel& model, double t,
                                      std::span<const double> adj_value,
                                      std::span<const double> adj_deriv);

// Flat view over every trainable parameter: network layout first, then QNode
// blocks j = 0, 1, ... row-major. Optimizers and difference checks share it.
std::size_t model_parameter_count(const HybridModel& model);
std::vector<double> pack_parameters(const HybridModel& model);
void unpack_parameters(HybridModel& model, std::span<const double> flat);

}  // namespace qpinn
