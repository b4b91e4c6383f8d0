#include "qpinn/qnode.hpp"

#include <string>

#include "qpinn/errors.hpp"
#include "qpinn/parallel.hpp"

namespace qpinn {

Observable observable_from_string(const std::string& name) {
    if (name == "z_sum") return Observable::z_sum;
    if (name == "z_global") return Observable::z_global;
    throw ConfigError("unknown observable '" + name + "'; valid: z_sum, z_global");
}

std::string to_string(Observable obs) {
    return obs == Observable::z_sum ? "z_sum" : "z_global";
}

void QNodeConfig::validate() const {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ConfigError("num_qubits must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(num_qubits));
    }
    if (depth < 1) throw ConfigError("depth must be >= 1, got " + std::to_string(depth));
    if (!(phi >= 0.0 && phi <= 2.0 * kPi)) {
        throw ConfigError("phi must be in [0, 2*pi], got " + std::to_string(phi));
    }
}

QNodeParams QNodeParams::zeros(int depth, int num_qubits) {
    QNodeParams p;
    p.depth = depth;
    p.num_qubits = num_qubits;
    p.angles.assign(std::size_t(depth) * num_qubits, 0.0);
    return p;
}

std::size_t QNodeParams::index(int layer, int qubit) const {
    if (layer < 0 || layer >= depth) {
        throw IndexError("layer " + std::to_string(layer) + " out of range [0, " +
                         std::to_string(depth - 1) + "]");
    }
    if (qubit < 0 || qubit >= num_qubits) {
        throw IndexError("qubit " + std::to_string(qubit) + " out of range [0, " +
                         std::to_string(num_qubits - 1) + "]");
    }
    return std::size_t(layer) * num_qubits + qubit;
}

void QNodeParams::check_shape(const QNodeConfig& config) const {
    if (depth != config.depth || num_qubits != config.num_qubits ||
        angles.size() != std::size_t(config.depth) * config.num_qubits) {
        throw ShapeError("angle grid is " + std::to_string(depth) + "x" +
                         std::to_string(num_qubits) + ", circuit needs " +
                         std::to_string(config.depth) + "x" + std::to_string(config.num_qubits));
    }
}

void apply_variational_layer(StateVector& state, std::span<const double> layer_angles,
                             double phi) {
    if (layer_angles.size() != std::size_t(state.num_qubits())) {
        throw ShapeError("layer has " + std::to_string(layer_angles.size()) +
                         " angles, state has " + std::to_string(state.num_qubits()) +
                         " qubits");
    }
    for (int q = 0; q < state.num_qubits(); ++q) state.apply_ry(q, layer_angles[q]);
    state.apply_h(0);
    state.apply_cp_all(phi);
}

StateVector prepare_qnode_state(const QNodeConfig& config, const QNodeParams& params) {
    config.validate();
    params.check_shape(config);
    StateVector state(config.num_qubits);
    for (int layer = 0; layer < config.depth; ++layer) {
        std::span<const double> row(params.angles.data() +
                                        std::size_t(layer) * config.num_qubits,
                                    std::size_t(config.num_qubits));
        apply_variational_layer(state, row, config.phi);
    }
    return state;
}

double expectation(const StateVector& state, Observable obs) {
    return obs == Observable::z_sum ? state.expect_z_sum() : state.expect_z_global();
}

double expectation(const QNodeConfig& config, const QNodeParams& params, Observable obs) {
    return expectation(prepare_qnode_state(config, params), obs);
}

QNodeParams grad_parameter_shift(const QNodeConfig& config, const QNodeParams& params,
                                 Observable obs) {
    config.validate();
    params.check_shape(config);
    const std::size_t n = params.count();
    std::vector<double> shifted(2 * n);
    // Each shifted evaluation owns its circuit; slot writes keep the result
    // independent of scheduling.
    parallel_for_tasks(2 * n, [&](std::size_t task) {
        QNodeParams p = params;
        p.angles[task >> 1] += (task & 1) ? -0.5 * kPi : 0.5 * kPi;
        shifted[task] = expectation(config, p, obs);
    });
    QNodeParams grad = QNodeParams::zeros(config.depth, config.num_qubits);
    for (std::size_t i = 0; i < n; ++i) {
        grad.angles[i] = 0.5 * (shifted[2 * i] - shifted[2 * i + 1]);
    }
    return grad;
}

}  // namespace qpinn
