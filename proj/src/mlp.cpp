#include "qpinn/mlp.hpp"

#include <cmath>
#include <string>

#include "qpinn/errors.hpp"
#include "qpinn/rng.hpp"

namespace qpinn {

namespace {

double activate(Activation act, double z) {
    switch (act) {
        case Activation::tanh: return std::tanh(z);
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::relu: return z > 0.0 ? z : 0.0;
    }
    throw ConfigError("unhandled activation");
}

void require_smooth(Activation act) {
    if (act == Activation::relu) {
        throw ConfigError(
            "activation relu has no smooth derivative; use tanh or sigmoid on "
            "differentiable paths");
    }
}

// First and second derivative from the activation VALUE; valid for the two
// smooth activations only.
double act_d1(Activation act, double v) {
    return act == Activation::tanh ? 1.0 - v * v : v * (1.0 - v);
}
double act_d2(Activation act, double v, double d1) {
    return act == Activation::tanh ? -2.0 * v * d1 : d1 * (1.0 - 2.0 * v);
}

}  // namespace

Activation activation_from_string(const std::string& name) {
    if (name == "tanh") return Activation::tanh;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "relu") return Activation::relu;
    throw ConfigError("unknown activation '" + name + "'; valid: tanh, sigmoid, relu");
}

std::string to_string(Activation act) {
    switch (act) {
        case Activation::tanh: return "tanh";
        case Activation::sigmoid: return "sigmoid";
        case Activation::relu: return "relu";
    }
    return "?";
}

std::size_t MLPParams::param_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weights.size() + l.bias.size();
    return n;
}

void MLPParams::check_valid() const {
    if (layers.empty()) throw ShapeError("network has no layers");
    int prev = 1;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& layer = layers[l];
        if (layer.in != prev || layer.out < 1 ||
            layer.weights.size() != std::size_t(layer.out) * layer.in ||
            layer.bias.size() != std::size_t(layer.out)) {
            throw ShapeError("layer " + std::to_string(l) + " is inconsistent (in=" +
                             std::to_string(layer.in) + ", out=" + std::to_string(layer.out) +
                             ", expected in=" + std::to_string(prev) + ")");
        }
        prev = layer.out;
    }
}

MLPParams init_mlp(const std::vector<int>& widths, std::mt19937_64& rng) {
    if (widths.empty()) {
        throw ShapeError("widths list is empty; need at least the output width");
    }
    MLPParams params;
    int in = 1;
    for (int w : widths) {
        if (w < 1) throw ShapeError("layer width must be >= 1, got " + std::to_string(w));
        MLPLayer layer;
        layer.in = in;
        layer.out = w;
        layer.weights.resize(std::size_t(w) * in);
        layer.bias.assign(std::size_t(w), 0.0);
        const double limit = std::sqrt(6.0 / (in + w));
        for (double& v : layer.weights) v = uniform(rng, -limit, limit);
        params.layers.push_back(std::move(layer));
        in = w;
    }
    return params;
}

std::vector<double> flatten(const MLPParams& params) {
    std::vector<double> flat;
    flat.reserve(params.param_count());
    for (const auto& l : params.layers) {
        flat.insert(flat.end(), l.weights.begin(), l.weights.end());
        flat.insert(flat.end(), l.bias.begin(), l.bias.end());
    }
    return flat;
}

void unflatten(MLPParams& params, std::span<const double> flat) {
    if (flat.size() != params.param_count()) {
        throw ShapeError("flat vector has " + std::to_string(flat.size()) +
                         " entries, network has " + std::to_string(params.param_count()));
    }
    std::size_t k = 0;
    for (auto& l : params.layers) {
        for (double& v : l.weights) v = flat[k++];
        for (double& v : l.bias) v = flat[k++];
    }
}

std::vector<double> mlp_forward(const MLPParams& params, Activation act, double t) {
    params.check_valid();
    std::vector<double> x{t};
    for (const auto& layer : params.layers) {
        std::vector<double> z(layer.out);
        for (int j = 0; j < layer.out; ++j) {
            double s = layer.bias[j];
            const double* row = layer.weights.data() + std::size_t(j) * layer.in;
            for (int i = 0; i < layer.in; ++i) s += row[i] * x[i];
            z[j] = activate(act, s);
        }
        x = std::move(z);
    }
    return x;
}

DualVec mlp_forward_dual(const MLPParams& params, Activation act, double t) {
    params.check_valid();
    require_smooth(act);
    std::vector<double> xv{t};
    std::vector<double> xt{1.0};
    for (const auto& layer : params.layers) {
        std::vector<double> zv(layer.out), zt(layer.out);
        for (int j = 0; j < layer.out; ++j) {
            // Value accumulation mirrors mlp_forward term for term.
            double sv = layer.bias[j];
            double st = 0.0;
            const double* row = layer.weights.data() + std::size_t(j) * layer.in;
            for (int i = 0; i < layer.in; ++i) {
                sv += row[i] * xv[i];
                st += row[i] * xt[i];
            }
            const double v = activate(act, sv);
            zv[j] = v;
            zt[j] = act_d1(act, v) * st;
        }
        xv = std::move(zv);
        xt = std::move(zt);
    }
    return {std::move(xv), std::move(xt)};
}

std::vector<double> mlp_backprop(const MLPParams& params, Activation act, double t,
                                 std::span<const double> out_adjoint,
                                 std::span<const double> tangent_adjoint) {
    params.check_valid();
    require_smooth(act);
    const std::size_t L = params.layers.size();
    if (out_adjoint.size() != std::size_t(params.output_dim()) ||
        tangent_adjoint.size() != std::size_t(params.output_dim())) {
        throw ShapeError("adjoint length " + std::to_string(out_adjoint.size()) + "/" +
                         std::to_string(tangent_adjoint.size()) + " does not match " +
                         std::to_string(params.output_dim()) + " outputs");
    }

    // Forward dual pass, keeping each layer's input (value, tangent) and
    // pre-activation tangent; derivatives of the activation are recovered
    // from the stored activation values.
    std::vector<std::vector<double>> in_v(L + 1), in_t(L + 1), pre_t(L);
    in_v[0] = {t};
    in_t[0] = {1.0};
    for (std::size_t l = 0; l < L; ++l) {
        const auto& layer = params.layers[l];
        in_v[l + 1].resize(layer.out);
        in_t[l + 1].resize(layer.out);
        pre_t[l].resize(layer.out);
        for (int j = 0; j < layer.out; ++j) {
            double sv = layer.bias[j];
            double st = 0.0;
            const double* row = layer.weights.data() + std::size_t(j) * layer.in;
            for (int i = 0; i < layer.in; ++i) {
                sv += row[i] * in_v[l][i];
                st += row[i] * in_t[l][i];
            }
            const double v = activate(act, sv);
            in_v[l + 1][j] = v;
            in_t[l + 1][j] = act_d1(act, v) * st;
            pre_t[l][j] = st;
        }
    }

    // Reverse sweep over the dual graph. A node's adjoint is the pair
    // (d S / d value, d S / d tangent); through a = sigma(z) they pull back as
    //   zbar_v = abar_v * s'(z) + abar_t * s''(z) * z_t,   zbar_t = abar_t * s'(z).
    std::vector<double> grad(params.param_count(), 0.0);
    std::vector<double> abar_v(out_adjoint.begin(), out_adjoint.end());
    std::vector<double> abar_t(tangent_adjoint.begin(), tangent_adjoint.end());

    std::size_t offset = params.param_count();
    for (std::size_t l = L; l-- > 0;) {
        const auto& layer = params.layers[l];
        offset -= layer.weights.size() + layer.bias.size();
        double* gw = grad.data() + offset;
        double* gb = gw + layer.weights.size();

        std::vector<double> xbar_v(layer.in, 0.0), xbar_t(layer.in, 0.0);
        for (int j = 0; j < layer.out; ++j) {
            const double v = in_v[l + 1][j];
            const double d1 = act_d1(act, v);
            const double d2 = act_d2(act, v, d1);
            const double zbar_v = abar_v[j] * d1 + abar_t[j] * d2 * pre_t[l][j];
            const double zbar_t = abar_t[j] * d1;
            const double* row = layer.weights.data() + std::size_t(j) * layer.in;
            double* grow = gw + std::size_t(j) * layer.in;
            for (int i = 0; i < layer.in; ++i) {
                grow[i] += zbar_v * in_v[l][i] + zbar_t * in_t[l][i];
                xbar_v[i] += row[i] * zbar_v;
                xbar_t[i] += row[i] * zbar_t;
            }
            gb[j] += zbar_v;
        }
        abar_v = std::move(xbar_v);
        abar_t = std::move(xbar_t);
    }
    return grad;
}

}  // namespace qpinn
