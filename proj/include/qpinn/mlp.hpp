#pragma once

#include <random>
#include <span>
#include <string>
#include <vector>

namespace qpinn {

// relu is accepted for plain evaluation but rejected on every differentiable
// path: the solver needs smooth second derivatives through the network.
enum class Activation { tanh, sigmoid, relu };

Activation activation_from_string(const std::string& name);
std::string to_string(Activation act);

struct MLPLayer {
    int in = 0;
    int out = 0;
    std::vector<double> weights;  // row-major [out][in]
    std::vector<double> bias;     // [out]
};

// Fully connected network from scalar input t to M outputs. The activation
// is applied after EVERY layer, the output layer included, so outputs live
// in the activation's range.
struct MLPParams {
    std::vector<MLPLayer> layers;

    int input_dim() const { return layers.empty() ? 0 : layers.front().in; }
    int output_dim() const { return layers.empty() ? 0 : layers.back().out; }
    std::size_t param_count() const;
    void check_valid() const;
};

// widths = output width of each layer in order, final entry = model outputs M;
// the scalar input dimension 1 is implied. Glorot-uniform weights on
// [-sqrt(6/(fan_in+fan_out)), +sqrt(6/(fan_in+fan_out))], zero biases, drawn
// in layer order from the supplied engine.
MLPParams init_mlp(const std::vector<int>& widths, std::mt19937_64& rng);

// Flat parameter order, fixed project-wide: layers first-to-last, each layer
// its weight rows then its bias. Optimizers and gradients share this layout.
std::vector<double> flatten(const MLPParams& params);
void unflatten(MLPParams& params, std::span<const double> flat);

std::vector<double> mlp_forward(const MLPParams& params, Activation act, double t);

// Value and d/dt in one pass (forward-mode dual with tangent seeded 1).
// The value half follows the exact arithmetic of mlp_forward.
struct DualVec {
    std::vector<double> value;
    std::vector<double> tangent;
};
DualVec mlp_forward_dual(const MLPParams& params, Activation act, double t);

// Gradient w.r.t. every weight and bias (flat layout) of the scalar
//   sum_j out_adjoint[j] * y_j(t) + tangent_adjoint[j] * y_j'(t),
// i.e. reverse mode over the dual forward pass; both channels in one sweep.
std::vector<double> mlp_backprop(const MLPParams& params, Activation act, double t,
                                 std::span<const double> out_adjoint,
                                 std::span<const double> tangent_adjoint);

}  // namespace qpinn
