#include "qpinn/config.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "qpinn/csv.hpp"
#include "qpinn/errors.hpp"

namespace qpinn {

using nlohmann::json;

RunMode run_mode_from_string(const std::string& name) {
    if (name == "train") return RunMode::train;
    if (name == "solve") return RunMode::solve;
    if (name == "diagnose") return RunMode::diagnose;
    throw ConfigError("field 'mode' must be one of train, solve, diagnose; got '" + name +
                      "'");
}

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::train: return "train";
        case RunMode::solve: return "solve";
        case RunMode::diagnose: return "diagnose";
    }
    return "?";
}

namespace {

std::string join_path(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const json& obj, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown field '" + join_path(prefix, item.key()) + "'");
        }
    }
}

const json& require(const json& obj, const std::string& prefix, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError("missing field '" + join_path(prefix, key) + "'");
    }
    return *it;
}

double as_double(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError("field '" + path + "' must be a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError("field '" + path + "' must be an integer");
    return v.get<int>();
}

std::uint64_t as_u64(const json& v, const std::string& path) {
    if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0))) {
        throw ConfigError("field '" + path + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) throw ConfigError("field '" + path + "' must be a boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError("field '" + path + "' must be a string");
    return v.get<std::string>();
}

std::vector<int> as_int_array(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError("field '" + path + "' must be an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(as_int(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<double> as_double_array(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError("field '" + path + "' must be an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(as_double(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

ProblemSpec parse_problem(const json& obj) {
    if (!obj.is_object()) throw ConfigError("field 'problem' must be an object");
    check_keys(obj, "problem",
               {"name", "lambda", "omega", "t0", "t_end", "collocation_points",
                "num_solution_points"});
    ProblemSpec spec;
    spec.name = as_string(require(obj, "problem", "name"), "problem.name");
    if (obj.contains("lambda")) spec.lambda = as_double(obj["lambda"], "problem.lambda");
    if (obj.contains("omega")) spec.omega = as_double(obj["omega"], "problem.omega");
    if (obj.contains("t0")) spec.t0 = as_double(obj["t0"], "problem.t0");
    if (obj.contains("t_end")) spec.t_end = as_double(obj["t_end"], "problem.t_end");
    if (obj.contains("collocation_points")) {
        spec.collocation_points =
            as_int(obj["collocation_points"], "problem.collocation_points");
    }
    if (obj.contains("num_solution_points")) {
        spec.num_solution_points =
            as_int(obj["num_solution_points"], "problem.num_solution_points");
    }
    return spec;
}

ModelStructure parse_model(const json& obj) {
    if (!obj.is_object()) throw ConfigError("field 'model' must be an object");
    check_keys(obj, "model",
               {"hidden", "activation", "num_qubits", "depth", "phi", "observable"});
    ModelStructure m;
    m.hidden = as_int_array(require(obj, "model", "hidden"), "model.hidden");
    m.qnode.num_qubits = as_int(require(obj, "model", "num_qubits"), "model.num_qubits");
    m.qnode.depth = as_int(require(obj, "model", "depth"), "model.depth");
    if (obj.contains("phi")) m.qnode.phi = as_double(obj["phi"], "model.phi");
    if (obj.contains("activation")) {
        m.activation = activation_from_string(as_string(obj["activation"], "model.activation"));
    }
    if (obj.contains("observable")) {
        m.observable =
            observable_from_string(as_string(obj["observable"], "model.observable"));
    }
    return m;
}

LossWeights parse_weights(const json& obj) {
    if (!obj.is_object()) throw ConfigError("field 'loss_weights' must be an object");
    check_keys(obj, "loss_weights", {"ic", "ode", "sol"});
    LossWeights w;
    if (obj.contains("ic")) w.ic = as_double(obj["ic"], "loss_weights.ic");
    if (obj.contains("ode")) w.ode = as_double(obj["ode"], "loss_weights.ode");
    if (obj.contains("sol")) w.sol = as_double(obj["sol"], "loss_weights.sol");
    for (double v : {w.ic, w.ode, w.sol}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ConfigError("loss_weights entries must be finite and >= 0");
        }
    }
    return w;
}

TrainConfig parse_train(const json& obj, std::uint64_t seed) {
    if (!obj.is_object()) throw ConfigError("field 'train' must be an object");
    check_keys(obj, "train",
               {"optimizer", "learning_rate", "beta1", "beta2", "epsilon", "epochs",
                "log_every", "update_classical", "update_quantum"});
    TrainConfig t;
    t.seed = seed;
    t.epochs = as_int(require(obj, "train", "epochs"), "train.epochs");
    if (obj.contains("optimizer")) {
        t.optimizer = optimizer_from_string(as_string(obj["optimizer"], "train.optimizer"));
    }
    if (obj.contains("learning_rate")) {
        t.learning_rate = as_double(obj["learning_rate"], "train.learning_rate");
    }
    if (obj.contains("beta1")) t.beta1 = as_double(obj["beta1"], "train.beta1");
    if (obj.contains("beta2")) t.beta2 = as_double(obj["beta2"], "train.beta2");
    if (obj.contains("epsilon")) t.epsilon = as_double(obj["epsilon"], "train.epsilon");
    if (obj.contains("log_every")) t.log_every = as_int(obj["log_every"], "train.log_every");
    if (obj.contains("update_classical")) {
        t.update_classical = as_bool(obj["update_classical"], "train.update_classical");
    }
    if (obj.contains("update_quantum")) {
        t.update_quantum = as_bool(obj["update_quantum"], "train.update_quantum");
    }
    t.validate();
    return t;
}

SolveSpec parse_solve(const json& obj) {
    if (!obj.is_object()) throw ConfigError("field 'solve' must be an object");
    check_keys(obj, "solve", {"snapshot", "grid"});
    SolveSpec s;
    s.snapshot_path = as_string(require(obj, "solve", "snapshot"), "solve.snapshot");
    if (obj.contains("grid")) {
        const json& g = obj["grid"];
        if (!g.is_object()) throw ConfigError("field 'solve.grid' must be an object");
        check_keys(g, "solve.grid", {"start", "end", "points"});
        if (g.contains("start")) s.grid_start = as_double(g["start"], "solve.grid.start");
        if (g.contains("end")) s.grid_end = as_double(g["end"], "solve.grid.end");
        if (g.contains("points")) s.grid_points = as_int(g["points"], "solve.grid.points");
    }
    if (s.grid_points < 1) throw ConfigError("solve.grid.points must be >= 1");
    return s;
}

void parse_sweep(const json& obj, RunConfig& cfg) {
    if (!obj.is_object()) throw ConfigError("field 'sweep' must be an object");
    check_keys(obj, "sweep",
               {"qubit_range", "depth_range", "samples", "eps_grad", "model_kind",
                "t_probe", "hidden", "activation", "phi"});
    SweepConfig& s = cfg.sweep;
    s.qubit_range = as_int_array(require(obj, "sweep", "qubit_range"), "sweep.qubit_range");
    s.depth_range = as_int_array(require(obj, "sweep", "depth_range"), "sweep.depth_range");
    if (obj.contains("samples")) s.samples = as_int(obj["samples"], "sweep.samples");
    if (obj.contains("eps_grad")) s.eps_grad = as_double(obj["eps_grad"], "sweep.eps_grad");
    if (obj.contains("t_probe")) s.t_probe = as_double_array(obj["t_probe"], "sweep.t_probe");
    if (obj.contains("hidden")) s.hidden = as_int_array(obj["hidden"], "sweep.hidden");
    if (obj.contains("activation")) {
        s.activation =
            activation_from_string(as_string(obj["activation"], "sweep.activation"));
    }
    if (obj.contains("phi")) s.phi = as_double(obj["phi"], "sweep.phi");

    const json& mk = require(obj, "sweep", "model_kind");
    cfg.sweep_kinds.clear();
    if (mk.is_string()) {
        cfg.sweep_kinds.push_back(model_kind_from_string(mk.get<std::string>()));
    } else if (mk.is_array()) {
        for (std::size_t i = 0; i < mk.size(); ++i) {
            cfg.sweep_kinds.push_back(model_kind_from_string(
                as_string(mk[i], "sweep.model_kind[" + std::to_string(i) + "]")));
        }
    } else {
        throw ConfigError("field 'sweep.model_kind' must be a string or string array");
    }
    if (cfg.sweep_kinds.empty()) {
        throw ConfigError("field 'sweep.model_kind' must name at least one kind");
    }
    for (std::size_t i = 0; i < cfg.sweep_kinds.size(); ++i) {
        for (std::size_t j = i + 1; j < cfg.sweep_kinds.size(); ++j) {
            if (cfg.sweep_kinds[i] == cfg.sweep_kinds[j]) {
                throw ConfigError("field 'sweep.model_kind' repeats '" +
                                  to_string(cfg.sweep_kinds[i]) + "'");
            }
        }
    }
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");

    RunConfig cfg;
    cfg.mode = run_mode_from_string(as_string(require(root, "", "mode"), "mode"));

    switch (cfg.mode) {
        case RunMode::train:
            check_keys(root, "",
                       {"mode", "seed", "output_dir", "problem", "model", "loss_weights",
                        "train"});
            break;
        case RunMode::solve:
            check_keys(root, "", {"mode", "seed", "output_dir", "solve"});
            break;
        case RunMode::diagnose:
            check_keys(root, "", {"mode", "seed", "output_dir", "problem", "sweep"});
            break;
    }

    if (root.contains("seed")) cfg.seed = as_u64(root["seed"], "seed");
    if (root.contains("output_dir")) {
        cfg.output_dir = as_string(root["output_dir"], "output_dir");
    }

    if (cfg.mode == RunMode::train) {
        cfg.problem = parse_problem(require(root, "", "problem"));
        cfg.has_problem = true;
        cfg.model = parse_model(require(root, "", "model"));
        if (root.contains("loss_weights")) cfg.weights = parse_weights(root["loss_weights"]);
        cfg.train = parse_train(require(root, "", "train"), cfg.seed);
    } else if (cfg.mode == RunMode::solve) {
        cfg.solve = parse_solve(require(root, "", "solve"));
    } else {
        parse_sweep(require(root, "", "sweep"), cfg);
        const bool any_mac =
            std::any_of(cfg.sweep_kinds.begin(), cfg.sweep_kinds.end(),
                        [](ModelKind k) { return k == ModelKind::mac; });
        if (any_mac) {
            cfg.problem = parse_problem(require(root, "", "problem"));
            cfg.has_problem = true;
        } else if (root.contains("problem")) {
            throw ConfigError(
                "field 'problem' does not apply: sweep.model_kind has no 'mac' entry");
        }
        cfg.sweep.problem = cfg.problem;
        cfg.sweep.seed = cfg.seed;
        for (ModelKind k : cfg.sweep_kinds) {
            cfg.sweep.model_kind = k;
            cfg.sweep.validate();
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    return parse_run_config(read_file(path));
}

namespace {

json problem_to_json(const ProblemSpec& spec) {
    json j;
    j["name"] = spec.name;
    if (spec.lambda) j["lambda"] = *spec.lambda;
    if (spec.omega) j["omega"] = *spec.omega;
    if (spec.t0) j["t0"] = *spec.t0;
    if (spec.t_end) j["t_end"] = *spec.t_end;
    if (spec.collocation_points) j["collocation_points"] = *spec.collocation_points;
    if (spec.num_solution_points) j["num_solution_points"] = *spec.num_solution_points;
    return j;
}

}  // namespace

std::string serialize_run_config(const RunConfig& cfg) {
    json j;
    j["mode"] = to_string(cfg.mode);
    j["seed"] = cfg.seed;
    if (cfg.output_dir) j["output_dir"] = *cfg.output_dir;

    if (cfg.mode == RunMode::train) {
        j["problem"] = problem_to_json(cfg.problem);
        json m;
        m["hidden"] = cfg.model.hidden;
        m["activation"] = to_string(cfg.model.activation);
        m["num_qubits"] = cfg.model.qnode.num_qubits;
        m["depth"] = cfg.model.qnode.depth;
        m["phi"] = cfg.model.qnode.phi;
        m["observable"] = to_string(cfg.model.observable);
        j["model"] = m;
        json w;
        w["ic"] = cfg.weights.ic;
        w["ode"] = cfg.weights.ode;
        w["sol"] = cfg.weights.sol;
        j["loss_weights"] = w;
        json t;
        t["optimizer"] = to_string(cfg.train.optimizer);
        t["learning_rate"] = cfg.train.learning_rate;
        t["beta1"] = cfg.train.beta1;
        t["beta2"] = cfg.train.beta2;
        t["epsilon"] = cfg.train.epsilon;
        t["epochs"] = cfg.train.epochs;
        t["log_every"] = cfg.train.log_every;
        t["update_classical"] = cfg.train.update_classical;
        t["update_quantum"] = cfg.train.update_quantum;
        j["train"] = t;
    } else if (cfg.mode == RunMode::solve) {
        json s;
        s["snapshot"] = cfg.solve.snapshot_path;
        json g;
        if (cfg.solve.grid_start) g["start"] = *cfg.solve.grid_start;
        if (cfg.solve.grid_end) g["end"] = *cfg.solve.grid_end;
        g["points"] = cfg.solve.grid_points;
        s["grid"] = g;
        j["solve"] = s;
    } else {
        if (cfg.has_problem) j["problem"] = problem_to_json(cfg.problem);
        json s;
        s["qubit_range"] = cfg.sweep.qubit_range;
        s["depth_range"] = cfg.sweep.depth_range;
        s["samples"] = cfg.sweep.samples;
        s["eps_grad"] = cfg.sweep.eps_grad;
        if (cfg.sweep_kinds.size() == 1) {
            s["model_kind"] = to_string(cfg.sweep_kinds.front());
        } else {
            json kinds = json::array();
            for (ModelKind k : cfg.sweep_kinds) kinds.push_back(to_string(k));
            s["model_kind"] = kinds;
        }
        if (!cfg.sweep.t_probe.empty()) s["t_probe"] = cfg.sweep.t_probe;
        s["hidden"] = cfg.sweep.hidden;
        s["activation"] = to_string(cfg.sweep.activation);
        s["phi"] = cfg.sweep.phi;
        j["sweep"] = s;
    }
    return j.dump(2) + "\n";
}

}  // namespace qpinn
