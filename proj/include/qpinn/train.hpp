#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpinn/loss.hpp"

namespace qpinn {

enum class OptimizerKind { adam, sgd };

OptimizerKind optimizer_from_string(const std::string& name);
std::string to_string(OptimizerKind kind);

// Structural half of a model; parameters are drawn at training time from the
// run seed (network first, then the QNode blocks).
struct ModelStructure {
    std::vector<int> hidden;  // hidden widths; output width comes from the problem
    Activation activation = Activation::tanh;
    QNodeConfig qnode;
    Observable observable = Observable::z_sum;
};

struct TrainConfig {
    OptimizerKind optimizer = OptimizerKind::adam;
    double learning_rate = 1e-2;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int epochs = 1000;
    std::uint64_t seed = 0;
    int log_every = 100;
    bool update_classical = true;  // freezing a block zeroes its gradient
    bool update_quantum = true;

    void validate() const;
};

// One trace row per logged epoch; the loss is the value at the parameters
// entering that epoch (before its update).
struct TraceRow {
    int epoch = 0;
    LossBreakdown loss;
    double grad_norm_classical = 0.0;
    double grad_norm_quantum = 0.0;
};

struct TrainResult {
    HybridModel model;
    std::vector<TraceRow> trace;
    bool aborted = false;  // a non-finite loss stopped training
    int abort_epoch = 0;   // epoch that produced it (model holds the last good state)
    LossBreakdown final_loss;
};

// Full-batch gradient descent over all collocation points. Deterministic for
// a fixed (problem, structure, config): initialization comes from config.seed
// and the loop itself draws nothing.
TrainResult train(const ODEProblem& problem, const ModelStructure& structure,
                  const LossWeights& weights, const TrainConfig& config);

}  // namespace qpinn
