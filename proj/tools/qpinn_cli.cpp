// Command-line front end: train | solve | diagnose, each driven by a JSON
// config. Artifacts land in --out (or the config's output_dir): the resolved
// config, CSV tables, and the model snapshot. Reruns with identical inputs
// produce byte-identical artifacts.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "qpinn/config.hpp"
#include "qpinn/csv.hpp"
#include "qpinn/errors.hpp"
#include "qpinn/loss.hpp"
#include "qpinn/snapshot.hpp"
#include "qpinn/train.hpp"

namespace {

using namespace qpinn;
using nlohmann::json;

struct CliArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
};

// --out only places artifacts; it is not echoed into the resolved config, so
// reruns into different directories stay byte-comparable.
std::string resolve_out_dir(const CliArgs& args, const RunConfig& cfg) {
    std::string out = !args.out_dir.empty() ? args.out_dir : cfg.output_dir.value_or("");
    if (out.empty()) {
        throw ConfigError("no output directory: pass --out or set 'output_dir'");
    }
    std::filesystem::create_directories(out);
    return out;
}

RunConfig load_for_mode(const CliArgs& args, RunMode mode) {
    RunConfig cfg = load_run_config(args.config_path);
    if (cfg.mode != mode) {
        throw ConfigError("config mode is '" + to_string(cfg.mode) +
                          "' but the subcommand is '" + to_string(mode) + "'");
    }
    if (args.seed) {
        cfg.seed = *args.seed;
        cfg.train.seed = *args.seed;
        cfg.sweep.seed = *args.seed;
    }
    return cfg;
}

void print_breakdown(const LossBreakdown& b) {
    std::cout << "loss total=" << format_double(b.total) << " ic=" << format_double(b.ic)
              << " ode=" << format_double(b.ode) << " sol="
              << (b.sol_skipped ? std::string("skipped") : format_double(b.sol)) << "\n";
}

int cmd_train(const CliArgs& args) {
    RunConfig cfg = load_for_mode(args, RunMode::train);
    const ODEProblem problem = make_problem(cfg.problem);
    cfg.problem = problem.spec;
    const std::string out = resolve_out_dir(args, cfg);
    write_file(out + "/config.json", serialize_run_config(cfg));

    TrainResult result = train(problem, cfg.model, cfg.weights, cfg.train);
    write_trace_csv(out + "/trace.csv", result.trace);

    const Trajectory traj = model_trajectory(result.model);
    SolutionTable table;
    table.dim = problem.dim;
    table.t = uniform_grid(problem.t0, problem.t_end, 101);
    for (double t : table.t) {
        table.y_mac.push_back(traj(t).value);
        if (problem.has_analytic()) table.y_ref.push_back(problem.analytic(t));
    }
    write_solution_csv(out + "/solution.csv", table);

    Snapshot snap{result.model, problem.spec, problem.t0, problem.t_end};
    save_snapshot(out + "/model.json", snap);

    print_breakdown(result.final_loss);
    if (problem.has_analytic()) {
        double max_err = 0.0;
        for (std::size_t i = 0; i < table.t.size(); ++i) {
            for (int j = 0; j < problem.dim; ++j) {
                max_err = std::max(max_err, std::abs(table.y_mac[i][j] - table.y_ref[i][j]));
            }
        }
        std::cout << "max_abs_error=" << format_double(max_err) << "\n";
    }
    std::cout << "artifacts in " << out << "\n";

    if (result.aborted) {
        std::cerr << "error: loss became non-finite at epoch " << result.abort_epoch
                  << "; artifacts hold the last finite state\n";
        return 3;
    }
    return 0;
}

int cmd_solve(const CliArgs& args) {
    RunConfig cfg = load_for_mode(args, RunMode::solve);
    const Snapshot snap = load_snapshot(cfg.solve.snapshot_path);
    const ODEProblem problem = make_problem(snap.problem);
    if (problem.dim != snap.model.output_dim()) {
        throw ShapeError("snapshot model has " + std::to_string(snap.model.output_dim()) +
                         " outputs, its problem has " + std::to_string(problem.dim));
    }

    const double start = cfg.solve.grid_start.value_or(snap.t0);
    const double end = cfg.solve.grid_end.value_or(snap.t_end);
    if (end < start) throw ConfigError("solve.grid.end must be >= solve.grid.start");
    cfg.solve.grid_start = start;
    cfg.solve.grid_end = end;
    const std::string out = resolve_out_dir(args, cfg);
    write_file(out + "/config.json", serialize_run_config(cfg));

    std::vector<double> grid;
    if (cfg.solve.grid_points == 1) {
        grid.push_back(start);
    } else {
        grid = uniform_grid(start, end, cfg.solve.grid_points);
    }

    const Trajectory traj = model_trajectory(snap.model);
    SolutionTable table;
    table.dim = problem.dim;
    table.t = grid;
    table.extrapolation_column = true;
    table.domain_t0 = snap.t0;
    table.domain_t_end = snap.t_end;
    for (double t : grid) {
        table.y_mac.push_back(traj(t).value);
        if (problem.has_analytic()) table.y_ref.push_back(problem.analytic(t));
    }
    write_solution_csv(out + "/solution.csv", table);
    std::cout << "wrote " << grid.size() << " rows to " << out << "/solution.csv\n";
    return 0;
}

json trainability_to_json(const TrainabilityReport& tr) {
    json cells = json::array();
    for (const auto& c : tr.cells) {
        cells.push_back(json{{"n_qubits", c.n_qubits},
                             {"depth", c.depth},
                             {"median_abs_norm", c.median_abs_norm},
                             {"trainable", c.trainable},
                             {"envelope_trainable", c.envelope_trainable}});
    }
    return json{{"eps_grad", tr.eps_grad},
                {"c_hat", tr.c_hat},
                {"max_product", tr.max_product},
                {"envelope_mismatches", tr.envelope_mismatches},
                {"cells", cells}};
}

int cmd_diagnose(const CliArgs& args) {
    RunConfig cfg = load_for_mode(args, RunMode::diagnose);
    const std::string out = resolve_out_dir(args, cfg);
    write_file(out + "/config.json", serialize_run_config(cfg));

    json summary;
    summary["seed"] = cfg.seed;
    json kinds = json::object();
    std::optional<double> slope_mac, slope_global;
    for (ModelKind kind : cfg.sweep_kinds) {
        SweepConfig sweep = cfg.sweep;
        sweep.model_kind = kind;
        const SweepReport report = run_sweep(sweep);
        const std::string kind_name = to_string(kind);
        write_sweep_csv(out + "/sweep_" + kind_name + ".csv", report.cells);

        json k;
        if (report.slope_vs_n) k["slope_vs_n"] = *report.slope_vs_n;
        if (report.slope_vs_depth) k["slope_vs_depth"] = *report.slope_vs_depth;
        k["c_hat"] = report.c_hat;
        k["trainability"] = trainability_to_json(trainability_report(report));
        kinds[kind_name] = k;

        if (kind == ModelKind::mac) slope_mac = report.slope_vs_n;
        if (kind == ModelKind::quantum_only_global) slope_global = report.slope_vs_n;

        std::cout << "kind=" << kind_name;
        if (report.slope_vs_n) std::cout << " slope_vs_n=" << format_double(*report.slope_vs_n);
        std::cout << " c_hat=" << format_double(report.c_hat) << "\n";
    }
    summary["kinds"] = kinds;
    if (slope_mac && slope_global) {
        summary["comparison"] = json{{"slope_vs_n_mac", *slope_mac},
                                     {"slope_vs_n_global", *slope_global},
                                     {"mac_minus_global", *slope_mac - *slope_global}};
    }
    write_file(out + "/sweep_summary.json", summary.dump(2) + "\n");
    std::cout << "artifacts in " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid quantum-classical ODE solver and plateau diagnostics"};
    app.require_subcommand(1);

    CliArgs args;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "JSON run configuration")
            ->required();
        sub->add_option("--out", args.out_dir, "output directory (overrides output_dir)");
        sub->add_option("--seed", args.seed, "seed override (64-bit unsigned)");
    };
    CLI::App* train_cmd = app.add_subcommand("train", "fit a model to an ODE problem");
    CLI::App* solve_cmd = app.add_subcommand("solve", "evaluate a snapshot on a grid");
    CLI::App* diagnose_cmd =
        app.add_subcommand("diagnose", "gradient-variance sweep over circuit sizes");
    add_common(train_cmd);
    add_common(solve_cmd);
    add_common(diagnose_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (train_cmd->parsed()) return cmd_train(args);
        if (solve_cmd->parsed()) return cmd_solve(args);
        return cmd_diagnose(args);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
