#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpinn/loss.hpp"
#include "qpinn/train.hpp"

namespace qpinn {

// What the sampled gradient is taken of:
//   mac:                full hybrid model, gradient of the composite loss.
//   quantum_only_local: bare QNode measuring z_sum, squared-error loss to 0.
//   quantum_only_global: bare QNode measuring z_global, squared-error loss
//                        to 0. The flat-gradient (plateau) baseline.
enum class ModelKind { mac, quantum_only_local, quantum_only_global };

ModelKind model_kind_from_string(const std::string& name);
std::string to_string(ModelKind kind);

struct SweepConfig {
    std::vector<int> qubit_range;   // N axis
    std::vector<int> depth_range;   // layer-count axis
    int samples = 200;              // random draws per cell
    std::uint64_t seed = 0;
    double eps_grad = 1e-3;         // trainability threshold on the median norm
    ModelKind model_kind = ModelKind::mac;
    ProblemSpec problem;            // mac only: which ODE the loss scores
    std::vector<int> hidden = {16, 16};  // mac only: network structure
    Activation activation = Activation::tanh;
    double phi = kPi;
    // mac only: times where the loss terms are evaluated (residual grid and
    // supervised samples alike); empty = the problem's own collocation grid.
    std::vector<double> t_probe;

    void validate() const;
};

// Moments of the quantum-parameter gradient over random initializations of
// one (N, depth) cell. The tracked component is angle [layer 0][qubit 0] of
// the first block; norms cover all quantum parameters of the sample.
struct GradientStats {
    int n_qubits = 0;
    int depth = 0;
    int sample_count = 0;
    double var_component = 0.0;  // unbiased sample variance
    double mean_component = 0.0;
    double median_abs_norm = 0.0;
    double max_norm = 0.0;
};

struct SampleRecord {
    double component = 0.0;
    double norm = 0.0;
};

// Per-sample RNG streams are keyed by (seed, n_qubits, depth, sample index),
// so results cannot depend on evaluation order or thread count. The mac kind
// redraws the network per sample; the bare kinds draw angles only.
GradientStats sample_gradient_stats(const SweepConfig& config, int n_qubits, int depth,
                                    std::vector<SampleRecord>* raw = nullptr);

// Same computation with caller-chosen per-sample seeds (test hook; repeated
// seeds give identical samples).
GradientStats sample_gradient_stats_with_seeds(const SweepConfig& config, int n_qubits,
                                               int depth,
                                               std::span<const std::uint64_t> seeds,
                                               std::vector<SampleRecord>* raw = nullptr);

struct SweepReport {
    SweepConfig config;
    std::vector<GradientStats> cells;  // qubit_range outer, depth_range inner
    // Least-squares slope of ln(var_component) along one axis with the other
    // held fixed (averaged over the fixed axis); absent when fewer than two
    // usable cells lie along the axis.
    std::optional<double> slope_vs_n;
    std::optional<double> slope_vs_depth;
    double c_hat = 0.0;  // envelope fit: median_abs_norm ~ c_hat / sqrt(N * depth)
};

SweepReport run_sweep(const SweepConfig& config);

struct TrainabilityCell {
    int n_qubits = 0;
    int depth = 0;
    double median_abs_norm = 0.0;
    bool trainable = false;           // measured: median_abs_norm >= eps_grad
    bool envelope_trainable = false;  // predicted: c_hat / sqrt(N * depth) >= eps_grad
};

// Cells classified against eps_grad, measured and via the fitted envelope;
// max_product is the largest N * depth the envelope calls trainable,
// (c_hat / eps_grad)^2.
struct TrainabilityReport {
    double eps_grad = 0.0;
    double c_hat = 0.0;
    double max_product = 0.0;
    int envelope_mismatches = 0;
    std::vector<TrainabilityCell> cells;
};

TrainabilityReport trainability_report(const SweepReport& report);

}  // namespace qpinn
