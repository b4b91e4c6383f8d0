#pragma once

#include <string>

#include "qpinn/hybrid.hpp"
#include "qpinn/ode.hpp"

namespace qpinn {

inline constexpr int kSnapshotSchemaVersion = 1;

// Everything needed to re-evaluate a trained model later: the full parameter
// state, the problem it was trained on (so reference columns can be rebuilt),
// and the training domain (so out-of-domain solves can be flagged).
struct Snapshot {
    HybridModel model;
    ProblemSpec problem;
    double t0 = 0.0;
    double t_end = 1.0;
};

// JSON with schema_version stamped; doubles survive save/load bitwise.
std::string serialize_snapshot(const Snapshot& snap);
Snapshot deserialize_snapshot(const std::string& json_text);

void save_snapshot(const std::string& path, const Snapshot& snap);
Snapshot load_snapshot(const std::string& path);

}  // namespace qpinn
