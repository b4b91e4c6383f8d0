#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpinn/diagnostics.hpp"
#include "qpinn/train.hpp"

namespace qpinn {

enum class RunMode { train, solve, diagnose };

RunMode run_mode_from_string(const std::string& name);
std::string to_string(RunMode mode);

struct SolveSpec {
    std::string snapshot_path;
    std::optional<double> grid_start;  // defaults to the snapshot's domain
    std::optional<double> grid_end;
    int grid_points = 101;
};

// One parsed run configuration. The schema is strict: a field that is not
// part of the schema, or that does not apply to the chosen mode, rejects the
// whole file with its dotted path named.
struct RunConfig {
    RunMode mode = RunMode::train;
    std::uint64_t seed = 0;
    std::optional<std::string> output_dir;

    // train + diagnose (mac kinds)
    ProblemSpec problem;
    bool has_problem = false;

    // train
    ModelStructure model;
    LossWeights weights;
    TrainConfig train;

    // diagnose: the sweep shared by every kind plus the kinds to run
    SweepConfig sweep;
    std::vector<ModelKind> sweep_kinds;

    // solve
    SolveSpec solve;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Resolved form with defaults materialized; what `--out` receives as
// config.json. Deterministic byte-for-byte for a fixed RunConfig.
std::string serialize_run_config(const RunConfig& config);

}  // namespace qpinn
