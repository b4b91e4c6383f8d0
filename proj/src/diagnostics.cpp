#include "qpinn/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "qpinn/errors.hpp"
#include "qpinn/parallel.hpp"
#include "qpinn/rng.hpp"

namespace qpinn {

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "mac") return ModelKind::mac;
    if (name == "quantum_only_local") return ModelKind::quantum_only_local;
    if (name == "quantum_only_global") return ModelKind::quantum_only_global;
    throw ConfigError("unknown model_kind '" + name +
                      "'; valid: mac, quantum_only_local, quantum_only_global");
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::mac: return "mac";
        case ModelKind::quantum_only_local: return "quantum_only_local";
        case ModelKind::quantum_only_global: return "quantum_only_global";
    }
    return "?";
}

void SweepConfig::validate() const {
    if (qubit_range.empty()) throw ConfigError("sweep.qubit_range must not be empty");
    for (int n : qubit_range) {
        if (n < 1 || n > kMaxQubits) {
            throw ConfigError("sweep.qubit_range entries must be in [1, " +
                              std::to_string(kMaxQubits) + "], got " + std::to_string(n));
        }
    }
    if (depth_range.empty()) throw ConfigError("sweep.depth_range must not be empty");
    for (int d : depth_range) {
        if (d < 1) throw ConfigError("sweep.depth_range entries must be >= 1");
    }
    if (samples < 2) throw ConfigError("sweep.samples must be >= 2 for a variance");
    if (!(eps_grad > 0.0)) throw ConfigError("sweep.eps_grad must be > 0");
    if (!(phi >= 0.0 && phi <= 2.0 * kPi)) {
        throw ConfigError("sweep.phi must be in [0, 2*pi]");
    }
    for (double t : t_probe) {
        if (!std::isfinite(t)) throw ConfigError("sweep.t_probe entries must be finite");
    }
    if (model_kind == ModelKind::mac && activation == Activation::relu) {
        throw ConfigError("sweep.activation relu is not differentiable; use tanh or sigmoid");
    }
}

namespace {

// Problem scored by the mac kind: the catalog entry with both the residual
// grid and the supervised samples placed on the probe times.
ODEProblem probe_problem(const SweepConfig& config) {
    ODEProblem problem = make_problem(config.problem);
    std::vector<double> grid =
        config.t_probe.empty() ? problem.collocation : config.t_probe;
    problem.collocation = grid;
    problem.known_solutions.clear();
    for (double t : grid) problem.known_solutions.emplace_back(t, problem.analytic(t));
    return problem;
}

SampleRecord mac_sample(const SweepConfig& config, const ODEProblem& problem,
                        const QNodeConfig& qnode, std::uint64_t sample_seed) {
    std::mt19937_64 rng(sample_seed);
    HybridModel model =
        init_hybrid_model(config.hidden, problem.dim, config.activation, qnode,
                          Observable::z_sum, rng);
    LossAndGrad lg = total_loss_and_grad(model, problem, LossWeights{});
    SampleRecord rec;
    rec.component = lg.grad_quantum[0].angles[0];
    double s = 0.0;
    for (const auto& block : lg.grad_quantum) {
        for (double g : block.angles) s += g * g;
    }
    rec.norm = std::sqrt(s);
    return rec;
}

SampleRecord bare_sample(const QNodeConfig& qnode, Observable obs,
                         std::uint64_t sample_seed) {
    std::mt19937_64 rng(sample_seed);
    QNodeParams params = QNodeParams::zeros(qnode.depth, qnode.num_qubits);
    for (double& a : params.angles) a = uniform(rng, 0.0, 2.0 * kPi);
    // Squared-error loss to the constant target 0: L = <O>^2.
    const double e = expectation(qnode, params, obs);
    QNodeParams grad = grad_parameter_shift(qnode, params, obs);
    SampleRecord rec;
    rec.component = 2.0 * e * grad.angles[0];
    double s = 0.0;
    for (double g : grad.angles) s += (2.0 * e * g) * (2.0 * e * g);
    rec.norm = std::sqrt(s);
    return rec;
}

GradientStats stats_from(const std::vector<SampleRecord>& records, int n_qubits,
                         int depth) {
    GradientStats st;
    st.n_qubits = n_qubits;
    st.depth = depth;
    st.sample_count = static_cast<int>(records.size());
    double mean = 0.0;
    for (const auto& r : records) mean += r.component;
    mean /= records.size();
    double var = 0.0;
    for (const auto& r : records) {
        var += (r.component - mean) * (r.component - mean);
    }
    var /= records.size() - 1;
    st.mean_component = mean;
    st.var_component = var;

    std::vector<double> norms(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) norms[i] = std::abs(records[i].norm);
    std::sort(norms.begin(), norms.end());
    const std::size_t mid = norms.size() / 2;
    st.median_abs_norm = norms.size() % 2 == 1
                             ? norms[mid]
                             : 0.5 * (norms[mid - 1] + norms[mid]);
    st.max_norm = norms.back();
    return st;
}

}  // namespace

GradientStats sample_gradient_stats_with_seeds(const SweepConfig& config, int n_qubits,
                                               int depth,
                                               std::span<const std::uint64_t> seeds,
                                               std::vector<SampleRecord>* raw) {
    config.validate();
    if (seeds.size() < 2) throw ConfigError("need >= 2 sample seeds for a variance");
    QNodeConfig qnode;
    qnode.num_qubits = n_qubits;
    qnode.depth = depth;
    qnode.phi = config.phi;
    qnode.validate();

    std::vector<SampleRecord> records(seeds.size());
    if (config.model_kind == ModelKind::mac) {
        const ODEProblem problem = probe_problem(config);
        parallel_for_tasks(seeds.size(), [&](std::size_t s) {
            records[s] = mac_sample(config, problem, qnode, seeds[s]);
        });
    } else {
        const Observable obs = config.model_kind == ModelKind::quantum_only_local
                                   ? Observable::z_sum
                                   : Observable::z_global;
        parallel_for_tasks(seeds.size(), [&](std::size_t s) {
            records[s] = bare_sample(qnode, obs, seeds[s]);
        });
    }
    GradientStats st = stats_from(records, n_qubits, depth);
    if (raw) *raw = std::move(records);
    return st;
}

GradientStats sample_gradient_stats(const SweepConfig& config, int n_qubits, int depth,
                                    std::vector<SampleRecord>* raw) {
    config.validate();
    std::vector<std::uint64_t> seeds(config.samples);
    for (int s = 0; s < config.samples; ++s) {
        seeds[s] = mix_seed({config.seed, std::uint64_t(n_qubits), std::uint64_t(depth),
                             std::uint64_t(s)});
    }
    return sample_gradient_stats_with_seeds(config, n_qubits, depth, seeds, raw);
}

namespace {

// Slope of ln(var) along `axis` values with the other axis fixed; cells with
// var <= 0 cannot be logged and drop out. Averaged over the fixed axis.
std::optional<double> axis_slope(const SweepReport& report, bool along_n) {
    const auto& fixed_values =
        along_n ? report.config.depth_range : report.config.qubit_range;
    double slope_sum = 0.0;
    int slope_count = 0;
    for (int fixed : fixed_values) {
        std::vector<double> xs, ys;
        for (const auto& cell : report.cells) {
            const int own = along_n ? cell.depth : cell.n_qubits;
            if (own != fixed || !(cell.var_component > 0.0)) continue;
            xs.push_back(static_cast<double>(along_n ? cell.n_qubits : cell.depth));
            ys.push_back(std::log(cell.var_component));
        }
        if (xs.size() < 2) continue;
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= xs.size();
        my /= ys.size();
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        if (sxx == 0.0) continue;
        slope_sum += sxy / sxx;
        ++slope_count;
    }
    if (slope_count == 0) return std::nullopt;
    return slope_sum / slope_count;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config) {
    config.validate();
    SweepReport report;
    report.config = config;
    for (int n : config.qubit_range) {
        for (int d : config.depth_range) {
            report.cells.push_back(sample_gradient_stats(config, n, d));
        }
    }
    report.slope_vs_n = axis_slope(report, true);
    report.slope_vs_depth = axis_slope(report, false);

    // Envelope c / sqrt(N * depth) fitted to the median norms by least squares.
    double num = 0.0, den = 0.0;
    for (const auto& cell : report.cells) {
        const double p = static_cast<double>(cell.n_qubits) * cell.depth;
        num += cell.median_abs_norm / std::sqrt(p);
        den += 1.0 / p;
    }
    report.c_hat = den > 0.0 ? num / den : 0.0;
    return report;
}

TrainabilityReport trainability_report(const SweepReport& report) {
    TrainabilityReport tr;
    tr.eps_grad = report.config.eps_grad;
    tr.c_hat = report.c_hat;
    tr.max_product = (report.c_hat / report.config.eps_grad) *
                     (report.c_hat / report.config.eps_grad);
    for (const auto& cell : report.cells) {
        TrainabilityCell c;
        c.n_qubits = cell.n_qubits;
        c.depth = cell.depth;
        c.median_abs_norm = cell.median_abs_norm;
        c.trainable = cell.median_abs_norm >= report.config.eps_grad;
        const double p = static_cast<double>(cell.n_qubits) * cell.depth;
        c.envelope_trainable = report.c_hat / std::sqrt(p) >= report.config.eps_grad;
        if (c.trainable != c.envelope_trainable) ++tr.envelope_mismatches;
        tr.cells.push_back(c);
    }
    return tr;
}

}  // namespace qpinn
