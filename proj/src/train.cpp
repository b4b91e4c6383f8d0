#include "qpinn/train.hpp"

#include <cmath>

#include "qpinn/errors.hpp"
#include "qpinn/rng.hpp"

namespace qpinn {

OptimizerKind optimizer_from_string(const std::string& name) {
    if (name == "adam") return OptimizerKind::adam;
    if (name == "sgd") return OptimizerKind::sgd;
    throw ConfigError("unknown optimizer '" + name + "'; valid: adam, sgd");
}

std::string to_string(OptimizerKind kind) {
    return kind == OptimizerKind::adam ? "adam" : "sgd";
}

void TrainConfig::validate() const {
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("train.learning_rate must be finite and >= 0");
    }
    if (epochs < 1) throw ConfigError("train.epochs must be >= 1");
    if (log_every < 1) throw ConfigError("train.log_every must be >= 1");
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
        throw ConfigError("train.beta1/beta2 must lie in [0, 1)");
    }
    if (!(epsilon > 0.0)) throw ConfigError("train.epsilon must be > 0");
}

namespace {

double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

TrainResult train(const ODEProblem& problem, const ModelStructure& structure,
                  const LossWeights& weights, const TrainConfig& config) {
    config.validate();
    structure.qnode.validate();
    if (structure.activation == Activation::relu) {
        throw ConfigError(
            "activation relu is not usable for solving (residuals need smooth "
            "derivatives); use tanh or sigmoid");
    }

    std::mt19937_64 rng = make_rng({config.seed});
    HybridModel model = init_hybrid_model(structure.hidden, problem.dim,
                                          structure.activation, structure.qnode,
                                          structure.observable, rng);

    const std::size_t n_classical = model.mlp.param_count();
    const std::size_t n_total = model_parameter_count(model);
    std::vector<double> params = pack_parameters(model);
    std::vector<double> m1(n_total, 0.0), m2(n_total, 0.0);

    TrainResult result;
    std::vector<double> last_good = params;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        LossAndGrad lg = total_loss_and_grad(model, problem, weights);
        if (!std::isfinite(lg.breakdown.total)) {
            result.aborted = true;
            result.abort_epoch = epoch;
            unpack_parameters(model, last_good);
            break;
        }
        last_good = params;

        // Flat gradient in pack_parameters layout, with frozen blocks zeroed.
        std::vector<double> grad(n_total, 0.0);
        if (config.update_classical) {
            for (std::size_t i = 0; i < n_classical; ++i) grad[i] = lg.grad_classical[i];
        }
        std::size_t k = n_classical;
        for (const auto& block : lg.grad_quantum) {
            for (double g : block.angles) {
                grad[k++] = config.update_quantum ? g : 0.0;
            }
        }

        if (epoch % config.log_every == 0 || epoch == config.epochs) {
            double qn = 0.0;
            for (const auto& block : lg.grad_quantum) {
                for (double g : block.angles) qn += g * g;
            }
            result.trace.push_back(TraceRow{epoch, lg.breakdown,
                                            l2_norm(lg.grad_classical), std::sqrt(qn)});
        }

        if (config.optimizer == OptimizerKind::adam) {
            const double bc1 = 1.0 - std::pow(config.beta1, epoch);
            const double bc2 = 1.0 - std::pow(config.beta2, epoch);
            for (std::size_t i = 0; i < n_total; ++i) {
                m1[i] = config.beta1 * m1[i] + (1.0 - config.beta1) * grad[i];
                m2[i] = config.beta2 * m2[i] + (1.0 - config.beta2) * grad[i] * grad[i];
                const double mhat = m1[i] / bc1;
                const double vhat = m2[i] / bc2;
                params[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.epsilon);
            }
        } else {
            for (std::size_t i = 0; i < n_total; ++i) {
                params[i] -= config.learning_rate * grad[i];
            }
        }
        unpack_parameters(model, params);
    }

    result.final_loss = composite_loss(model, problem, weights);
    result.model = std::move(model);
    return result;
}

}  // namespace qpinn
