#include <doctest.h>

#include <cmath>
#include <vector>

#include "qpinn/errors.hpp"
#include "qpinn/mlp.hpp"
#include "qpinn/rng.hpp"
#include "support/finite_diff.hpp"

using namespace qpinn;

namespace {

// Naive per-element forward pass, written independently of the library code.
std::vector<double> loop_forward(const MLPParams& p, Activation act, double t) {
    std::vector<double> x{t};
    for (const MLPLayer& layer : p.layers) {
        std::vector<double> y(static_cast<std::size_t>(layer.out));
        for (int o = 0; o < layer.out; ++o) {
            double z = layer.bias[static_cast<std::size_t>(o)];
            for (int i = 0; i < layer.in; ++i) {
                z += layer.weights[static_cast<std::size_t>(o * layer.in + i)] *
                     x[static_cast<std::size_t>(i)];
            }
            switch (act) {
                case Activation::tanh: y[static_cast<std::size_t>(o)] = std::tanh(z); break;
                case Activation::sigmoid:
                    y[static_cast<std::size_t>(o)] = 1.0 / (1.0 + std::exp(-z));
                    break;
                case Activation::relu: y[static_cast<std::size_t>(o)] = z > 0.0 ? z : 0.0; break;
            }
        }
        x = std::move(y);
    }
    return x;
}

MLPParams random_mlp(const std::vector<int>& widths, std::uint64_t salt) {
    std::mt19937_64 rng = make_rng({13, salt});
    return init_mlp(widths, rng);
}

}  // namespace

TEST_CASE("zero parameters give tanh output 0 and sigmoid output 0.5") {
    std::mt19937_64 rng = make_rng({13, 1});
    MLPParams p = init_mlp({4, 2}, rng);
    for (MLPLayer& layer : p.layers) {
        std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
    }
    const auto tanh_out = mlp_forward(p, Activation::tanh, 0.7);
    CHECK(tanh_out.size() == 2);
    for (double v : tanh_out) CHECK(v == 0.0);
    const auto sig_out = mlp_forward(p, Activation::sigmoid, -1.3);
    for (double v : sig_out) CHECK(v == 0.5);
}

TEST_CASE("forward pass matches an independent loop oracle") {
    for (auto widths : std::vector<std::vector<int>>{{1}, {3, 2}, {16, 16, 3}}) {
        MLPParams p = random_mlp(widths, 2);
        for (double t : {-2.0, -0.4, 0.0, 0.9, 1.7}) {
            for (Activation act : {Activation::tanh, Activation::sigmoid, Activation::relu}) {
                const auto got = mlp_forward(p, act, t);
                const auto expect = loop_forward(p, act, t);
                REQUIRE(got.size() == expect.size());
                for (std::size_t i = 0; i < got.size(); ++i) {
                    CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-15));
                }
            }
        }
    }
}

TEST_CASE("dual value half is bitwise identical to the plain forward pass") {
    MLPParams p = random_mlp({8, 8, 2}, 3);
    for (double t : {-1.5, 0.0, 0.31, 2.25}) {
        for (Activation act : {Activation::tanh, Activation::sigmoid}) {
            const auto plain = mlp_forward(p, act, t);
            const DualVec dual = mlp_forward_dual(p, act, t);
            REQUIRE(plain.size() == dual.value.size());
            for (std::size_t i = 0; i < plain.size(); ++i) CHECK(plain[i] == dual.value[i]);
        }
    }
}

TEST_CASE("dual tangent matches central differences in t") {
    MLPParams p = random_mlp({6, 4, 3}, 4);
    const double h = 1e-6;
    for (Activation act : {Activation::tanh, Activation::sigmoid}) {
        for (double t : {-0.8, 0.2, 1.4}) {
            const DualVec dual = mlp_forward_dual(p, act, t);
            const auto fp = mlp_forward(p, act, t + h);
            const auto fm = mlp_forward(p, act, t - h);
            for (std::size_t i = 0; i < dual.tangent.size(); ++i) {
                CHECK(fd::close(dual.tangent[i], (fp[i] - fm[i]) / (2.0 * h), 1e-7, 1e-10));
            }
        }
    }
}

TEST_CASE("backprop matches central differences on both adjoint channels") {
    MLPParams p = random_mlp({5, 4, 2}, 5);
    const double t = 0.45;
    const double h = 1e-6;
    const std::vector<double> out_adj{0.7, -1.2};
    const std::vector<double> tan_adj{0.3, 0.9};
    for (Activation act : {Activation::tanh, Activation::sigmoid}) {
        const auto grad = mlp_backprop(p, act, t, out_adj, tan_adj);
        const auto flat = flatten(p);
        REQUIRE(grad.size() == flat.size());

        auto objective = [&](const std::vector<double>& theta) {
            MLPParams q = p;
            unflatten(q, theta);
            const DualVec d = mlp_forward_dual(q, act, t);
            double s = 0.0;
            for (std::size_t j = 0; j < d.value.size(); ++j) {
                s += out_adj[j] * d.value[j] + tan_adj[j] * d.tangent[j];
            }
            return s;
        };
        for (std::size_t i = 0; i < flat.size(); ++i) {
            const double expect = fd::central_at(objective, flat, i, h);
            CHECK(fd::close(grad[i], expect, 1e-6, 1e-9));
        }
    }
}

TEST_CASE("backprop is linear in the adjoints") {
    MLPParams p = random_mlp({4, 2}, 6);
    const double t = -0.2;
    const std::vector<double> a1{1.0, 0.0}, a2{0.0, 1.0}, zero{0.0, 0.0};
    const auto g1 = mlp_backprop(p, Activation::tanh, t, a1, zero);
    const auto g2 = mlp_backprop(p, Activation::tanh, t, zero, a2);
    const auto sum = mlp_backprop(p, Activation::tanh, t, a1, a2);
    for (std::size_t i = 0; i < sum.size(); ++i) {
        CHECK(sum[i] == doctest::Approx(g1[i] + g2[i]).epsilon(1e-12));
    }
}

TEST_CASE("flatten and unflatten round-trip in the documented layer order") {
    MLPParams p = random_mlp({3, 2}, 7);
    const auto flat = flatten(p);
    CHECK(flat.size() == p.param_count());
    // Layer 0 weights come first: 3 rows of 1 input, then 3 biases.
    CHECK(flat[0] == p.layers[0].weights[0]);
    CHECK(flat[3] == p.layers[0].bias[0]);
    CHECK(flat[6] == p.layers[1].weights[0]);

    MLPParams q = random_mlp({3, 2}, 8);
    unflatten(q, flat);
    CHECK(flatten(q) == flat);
}

TEST_CASE("glorot bounds hold and biases start at zero") {
    MLPParams p = random_mlp({16, 16, 2}, 9);
    REQUIRE(p.layers.size() == 3);
    CHECK(p.input_dim() == 1);
    CHECK(p.output_dim() == 2);
    for (const MLPLayer& layer : p.layers) {
        const double bound = std::sqrt(6.0 / (layer.in + layer.out));
        for (double w : layer.weights) CHECK(std::abs(w) <= bound);
        for (double b : layer.bias) CHECK(b == 0.0);
    }
}

TEST_CASE("relu is rejected on differentiable paths but accepted forward") {
    MLPParams p = random_mlp({4, 1}, 10);
    CHECK_NOTHROW(mlp_forward(p, Activation::relu, 0.5));
    CHECK_THROWS_AS(mlp_forward_dual(p, Activation::relu, 0.5), ConfigError);
    const std::vector<double> adj{1.0};
    CHECK_THROWS_AS(mlp_backprop(p, Activation::relu, 0.5, adj, adj), ConfigError);
}

TEST_CASE("activation names round-trip and shape errors are raised") {
    CHECK(activation_from_string("tanh") == Activation::tanh);
    CHECK(activation_from_string("sigmoid") == Activation::sigmoid);
    CHECK(activation_from_string("relu") == Activation::relu);
    CHECK_THROWS_AS(activation_from_string("gelu"), ConfigError);

    std::mt19937_64 rng = make_rng({13, 11});
    CHECK_THROWS_AS(init_mlp({}, rng), ShapeError);
    CHECK_THROWS_AS(init_mlp({0, 2}, rng), ShapeError);

    MLPParams p = random_mlp({3, 2}, 12);
    CHECK_THROWS_AS(unflatten(p, std::vector<double>{1.0, 2.0}), ShapeError);
    p.layers[1].in = 5;
    CHECK_THROWS_AS(p.check_valid(), ShapeError);
}
