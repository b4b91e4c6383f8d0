#pragma once

#include <span>
#include <string>
#include <vector>

#include "qpinn/statevector.hpp"

namespace qpinn {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Measured observable of a QNode.
//   z_sum:    sum_k Z_k, expectation in [-N, N]. Default; used by the solver.
//   z_global: Z x ... x Z, expectation in [-1, 1]. Diagnostics baseline only.
enum class Observable { z_sum, z_global };

Observable observable_from_string(const std::string& name);
std::string to_string(Observable obs);

// Circuit structure shared by all layers of one QNode: one R_Y per qubit,
// a Hadamard on qubit 0, then a collective phase phi on |1...1>.
struct QNodeConfig {
    int num_qubits = 1;
    int depth = 1;      // number of stacked variational layers
    double phi = kPi;   // collective-phase angle, in [0, 2*pi]

    void validate() const;
};

// Trainable angles of one QNode: one R_Y angle per (layer, qubit). The same
// shape carries parameter-shift gradients.
struct QNodeParams {
    int depth = 0;
    int num_qubits = 0;
    std::vector<double> angles;  // row-major [layer][qubit]

    static QNodeParams zeros(int depth, int num_qubits);

    double& at(int layer, int qubit) { return angles[index(layer, qubit)]; }
    double at(int layer, int qubit) const { return angles[index(layer, qubit)]; }
    std::size_t index(int layer, int qubit) const;
    std::size_t count() const { return angles.size(); }

    void check_shape(const QNodeConfig& config) const;
};

// One variational layer in place: R_Y(angles[k]) on every qubit k, then H on
// qubit 0, then the collective phase. Layer angles must match the qubit count.
void apply_variational_layer(StateVector& state, std::span<const double> layer_angles,
                             double phi);

// All layers applied in order to |0...0>.
StateVector prepare_qnode_state(const QNodeConfig& config, const QNodeParams& params);

double expectation(const StateVector& state, Observable obs);
double expectation(const QNodeConfig& config, const QNodeParams& params, Observable obs);

// Exact gradient of the expectation w.r.t. every angle via the two-point
// parameter-shift rule: d<O>/dtheta = (<O>(theta + pi/2) - <O>(theta - pi/2)) / 2.
// 2 * depth * N independent circuit evaluations; deterministic output.
QNodeParams grad_parameter_shift(const QNodeConfig& config, const QNodeParams& params,
                                 Observable obs);

}  // namespace qpinn
