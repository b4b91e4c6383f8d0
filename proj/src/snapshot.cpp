#include "qpinn/snapshot.hpp"

#include <json.hpp>

#include "qpinn/csv.hpp"
#include "qpinn/errors.hpp"

namespace qpinn {

using nlohmann::json;

std::string serialize_snapshot(const Snapshot& snap) {
    snap.model.check_valid();
    json j;
    j["schema_version"] = kSnapshotSchemaVersion;
    j["domain"] = {{"t0", snap.t0}, {"t_end", snap.t_end}};

    json p;
    p["name"] = snap.problem.name;
    if (snap.problem.lambda) p["lambda"] = *snap.problem.lambda;
    if (snap.problem.omega) p["omega"] = *snap.problem.omega;
    if (snap.problem.t0) p["t0"] = *snap.problem.t0;
    if (snap.problem.t_end) p["t_end"] = *snap.problem.t_end;
    if (snap.problem.collocation_points) {
        p["collocation_points"] = *snap.problem.collocation_points;
    }
    if (snap.problem.num_solution_points) {
        p["num_solution_points"] = *snap.problem.num_solution_points;
    }
    j["problem"] = p;

    j["activation"] = to_string(snap.model.activation);
    j["observable"] = to_string(snap.model.observable);
    j["qnode"] = {{"num_qubits", snap.model.qnode.num_qubits},
                  {"depth", snap.model.qnode.depth},
                  {"phi", snap.model.qnode.phi}};

    json layers = json::array();
    for (const auto& layer : snap.model.mlp.layers) {
        layers.push_back(json{{"in", layer.in},
                              {"out", layer.out},
                              {"weights", layer.weights},
                              {"bias", layer.bias}});
    }
    j["mlp"] = layers;

    json blocks = json::array();
    for (const auto& block : snap.model.qnode_params) {
        json rows = json::array();
        for (int l = 0; l < block.depth; ++l) {
            json row = json::array();
            for (int q = 0; q < block.num_qubits; ++q) row.push_back(block.at(l, q));
            rows.push_back(row);
        }
        blocks.push_back(rows);
    }
    j["qnode_params"] = blocks;
    return j.dump(2) + "\n";
}

Snapshot deserialize_snapshot(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("snapshot is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("schema_version") ||
        !j["schema_version"].is_number_integer()) {
        throw ConfigError("snapshot has no integer schema_version field");
    }
    const int version = j["schema_version"].get<int>();
    if (version != kSnapshotSchemaVersion) {
        throw ConfigError("snapshot schema_version " + std::to_string(version) +
                          " is not supported; this build reads version " +
                          std::to_string(kSnapshotSchemaVersion) +
                          " and has no migration for other versions");
    }

    try {
        Snapshot snap;
        snap.t0 = j.at("domain").at("t0").get<double>();
        snap.t_end = j.at("domain").at("t_end").get<double>();

        const json& p = j.at("problem");
        snap.problem.name = p.at("name").get<std::string>();
        if (p.contains("lambda")) snap.problem.lambda = p["lambda"].get<double>();
        if (p.contains("omega")) snap.problem.omega = p["omega"].get<double>();
        if (p.contains("t0")) snap.problem.t0 = p["t0"].get<double>();
        if (p.contains("t_end")) snap.problem.t_end = p["t_end"].get<double>();
        if (p.contains("collocation_points")) {
            snap.problem.collocation_points = p["collocation_points"].get<int>();
        }
        if (p.contains("num_solution_points")) {
            snap.problem.num_solution_points = p["num_solution_points"].get<int>();
        }

        snap.model.activation = activation_from_string(j.at("activation").get<std::string>());
        snap.model.observable = observable_from_string(j.at("observable").get<std::string>());
        snap.model.qnode.num_qubits = j.at("qnode").at("num_qubits").get<int>();
        snap.model.qnode.depth = j.at("qnode").at("depth").get<int>();
        snap.model.qnode.phi = j.at("qnode").at("phi").get<double>();

        for (const json& lj : j.at("mlp")) {
            MLPLayer layer;
            layer.in = lj.at("in").get<int>();
            layer.out = lj.at("out").get<int>();
            layer.weights = lj.at("weights").get<std::vector<double>>();
            layer.bias = lj.at("bias").get<std::vector<double>>();
            snap.model.mlp.layers.push_back(std::move(layer));
        }

        for (const json& bj : j.at("qnode_params")) {
            QNodeParams block = QNodeParams::zeros(snap.model.qnode.depth,
                                                   snap.model.qnode.num_qubits);
            if (bj.size() != std::size_t(block.depth)) {
                throw ShapeError("snapshot qnode_params block has " +
                                 std::to_string(bj.size()) + " layers, circuit has " +
                                 std::to_string(block.depth));
            }
            for (int l = 0; l < block.depth; ++l) {
                const json& row = bj[l];
                if (row.size() != std::size_t(block.num_qubits)) {
                    throw ShapeError("snapshot qnode_params row has " +
                                     std::to_string(row.size()) + " angles, circuit has " +
                                     std::to_string(block.num_qubits) + " qubits");
                }
                for (int q = 0; q < block.num_qubits; ++q) {
                    block.at(l, q) = row[q].get<double>();
                }
            }
            snap.model.qnode_params.push_back(std::move(block));
        }

        snap.model.check_valid();
        return snap;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("snapshot structure is invalid: ") + e.what());
    }
}

void save_snapshot(const std::string& path, const Snapshot& snap) {
    write_file(path, serialize_snapshot(snap));
}

Snapshot load_snapshot(const std::string& path) {
    return deserialize_snapshot(read_file(path));
}

}  // namespace qpinn
