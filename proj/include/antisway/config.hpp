#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "antisway/inference.hpp"
#include "antisway/membership.hpp"
#include "antisway/rulebase.hpp"
#include "antisway/simulation.hpp"

namespace antisway {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Partition description as stored in configuration files. Sigmas are
/// never stored; they are always recomputed from the term spacing.
struct PartitionSpec {
    std::string name;
    double z_max = 1.0;
    std::vector<std::string> labels;
};

/// Rule source: a built-in table name or the lines of an inline grid.
using RuleSpec = std::variant<std::string, std::vector<std::string>>;

struct ControllerConfig {
    InferenceMode mode = InferenceMode::mamdani;
    int grid_points = Engine::default_grid_points;
    bool clamp_inputs = true;  // plant states can leave the universes
    std::vector<PartitionSpec> inputs = {
        {"phi", 1.0, {"N", "Z", "P"}},
        {"phidot", 1.0, {"N", "Z", "P"}},
    };
    PartitionSpec output = {"u", 1.0, {"N", "Z", "P"}};
    RuleSpec rules = std::string("principles_3x3");
};

struct PlantConfig {
    PlantParams params;       // accel_gain default 1.0 (see README tuning note)
    int dt_per_period = 1000; // RK4 steps per reference period
};

struct RunSettings {
    double phi0 = 0.1;
    double phidot0 = 0.0;
    double horizon_periods = 10.0;
    double settle_fraction = 0.05;
    double phi_scale = 0.3;
    double phidot_scale = 0.1;
};

struct SweepSettings {
    std::optional<std::vector<double>> lengths;  // empty = default grid
};

struct ExperimentConfig {
    ControllerConfig controller;
    PlantConfig plant;
    RunSettings run;
    SweepSettings sweep;
};

namespace detail {

using json = nlohmann::json;

[[noreturn]] inline void fail(const std::string& field, const std::string& why) {
    throw ConfigError("config: " + field + ": " + why);
}

inline void check_keys(const json& obj, const std::string& where,
                       std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) fail(where + "." + key, "unknown key");
    }
}

inline double get_real(const json& obj, const std::string& where,
                       const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(where + "." + key, "expected a number");
    return v.get<double>();
}

inline int get_int(const json& obj, const std::string& where, const char* key,
                   int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
    return v.get<int>();
}

inline bool get_bool(const json& obj, const std::string& where,
                     const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) fail(where + "." + key, "expected a boolean");
    return v.get<bool>();
}

inline PartitionSpec parse_partition_spec(const json& obj,
                                          const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    check_keys(obj, where, {"name", "z_max", "labels"});
    PartitionSpec spec;
    if (!obj.contains("name") || !obj.at("name").is_string()) {
        fail(where + ".name", "expected a string");
    }
    spec.name = obj.at("name").get<std::string>();
    spec.z_max = get_real(obj, where, "z_max", 1.0);
    if (spec.z_max <= 0.0) fail(where + ".z_max", "must be > 0");
    if (!obj.contains("labels") || !obj.at("labels").is_array() ||
        obj.at("labels").size() < 2) {
        fail(where + ".labels", "expected an array of at least 2 strings");
    }
    for (const auto& l : obj.at("labels")) {
        if (!l.is_string()) fail(where + ".labels", "labels must be strings");
        spec.labels.push_back(l.get<std::string>());
    }
    return spec;
}

inline ControllerConfig parse_controller(const json& obj) {
    ControllerConfig cfg;
    if (!obj.is_object()) fail("controller", "expected an object");
    check_keys(obj, "controller",
               {"mode", "grid_points", "clamp_inputs", "inputs", "output",
                "rules"});
    if (obj.contains("mode")) {
        const auto& v = obj.at("mode");
        if (!v.is_string()) fail("controller.mode", "expected a string");
        const auto s = v.get<std::string>();
        if (s == "mamdani") {
            cfg.mode = InferenceMode::mamdani;
        } else if (s == "sugeno") {
            cfg.mode = InferenceMode::sugeno_singleton;
        } else {
            fail("controller.mode", "expected \"mamdani\" or \"sugeno\", got \"" + s + "\"");
        }
    }
    cfg.grid_points = get_int(obj, "controller", "grid_points", cfg.grid_points);
    cfg.clamp_inputs =
        get_bool(obj, "controller", "clamp_inputs", cfg.clamp_inputs);
    if (obj.contains("inputs")) {
        const auto& v = obj.at("inputs");
        if (!v.is_array() || v.size() != 2) {
            fail("controller.inputs", "expected an array of exactly 2 partitions");
        }
        cfg.inputs.clear();
        cfg.inputs.push_back(parse_partition_spec(v[0], "controller.inputs[0]"));
        cfg.inputs.push_back(parse_partition_spec(v[1], "controller.inputs[1]"));
    }
    if (obj.contains("output")) {
        cfg.output = parse_partition_spec(obj.at("output"), "controller.output");
    }
    if (obj.contains("rules")) {
        const auto& v = obj.at("rules");
        if (v.is_string()) {
            cfg.rules = v.get<std::string>();
        } else if (v.is_array()) {
            std::vector<std::string> lines;
            for (const auto& line : v) {
                if (!line.is_string()) {
                    fail("controller.rules", "inline grid must be an array of strings");
                }
                lines.push_back(line.get<std::string>());
            }
            cfg.rules = std::move(lines);
        } else {
            fail("controller.rules",
                 "expected a built-in name or an array of grid lines");
        }
    }
    return cfg;
}

inline PlantConfig parse_plant(const json& obj) {
    PlantConfig cfg;
    if (!obj.is_object()) fail("plant", "expected an object");
    check_keys(obj, "plant", {"l", "g", "damping", "accel_gain", "dt_per_period"});
    cfg.params.length = get_real(obj, "plant", "l", cfg.params.length);
    cfg.params.gravity = get_real(obj, "plant", "g", cfg.params.gravity);
    cfg.params.damping = get_real(obj, "plant", "damping", cfg.params.damping);
    cfg.params.accel_gain =
        get_real(obj, "plant", "accel_gain", cfg.params.accel_gain);
    cfg.dt_per_period = get_int(obj, "plant", "dt_per_period", cfg.dt_per_period);
    if (cfg.params.length <= 0.0) fail("plant.l", "must be > 0");
    if (cfg.params.gravity <= 0.0) fail("plant.g", "must be > 0");
    if (cfg.params.damping < 0.0) fail("plant.damping", "must be >= 0");
    if (cfg.dt_per_period < 1) fail("plant.dt_per_period", "must be >= 1");
    return cfg;
}

inline RunSettings parse_run(const json& obj) {
    RunSettings cfg;
    if (!obj.is_object()) fail("run", "expected an object");
    check_keys(obj, "run",
               {"phi0", "phidot0", "horizon_periods", "settle_fraction",
                "phi_scale", "phidot_scale"});
    cfg.phi0 = get_real(obj, "run", "phi0", cfg.phi0);
    cfg.phidot0 = get_real(obj, "run", "phidot0", cfg.phidot0);
    cfg.horizon_periods =
        get_real(obj, "run", "horizon_periods", cfg.horizon_periods);
    cfg.settle_fraction =
        get_real(obj, "run", "settle_fraction", cfg.settle_fraction);
    cfg.phi_scale = get_real(obj, "run", "phi_scale", cfg.phi_scale);
    cfg.phidot_scale = get_real(obj, "run", "phidot_scale", cfg.phidot_scale);
    if (cfg.horizon_periods <= 0.0) fail("run.horizon_periods", "must be > 0");
    if (cfg.settle_fraction <= 0.0 || cfg.settle_fraction >= 1.0) {
        fail("run.settle_fraction", "must lie in (0, 1)");
    }
    if (cfg.phi_scale <= 0.0) fail("run.phi_scale", "must be > 0");
    if (cfg.phidot_scale <= 0.0) fail("run.phidot_scale", "must be > 0");
    return cfg;
}

inline SweepSettings parse_sweep(const json& obj) {
    SweepSettings cfg;
    if (!obj.is_object()) fail("sweep", "expected an object");
    check_keys(obj, "sweep", {"lengths"});
    if (!obj.contains("lengths")) return cfg;
    const auto& v = obj.at("lengths");
    if (v.is_string()) {
        if (v.get<std::string>() != "default") {
            fail("sweep.lengths", "expected \"default\" or an array of reals");
        }
        return cfg;
    }
    if (!v.is_array() || v.empty()) {
        fail("sweep.lengths", "expected \"default\" or a non-empty array of reals");
    }
    std::vector<double> lengths;
    for (const auto& e : v) {
        if (!e.is_number()) fail("sweep.lengths", "lengths must be numbers");
        const double l = e.get<double>();
        if (l <= 0.0) fail("sweep.lengths", "lengths must be > 0");
        lengths.push_back(l);
    }
    cfg.lengths = std::move(lengths);
    return cfg;
}

}  // namespace detail

/// Parses a full experiment configuration from JSON text. Unknown keys and
/// malformed values raise ConfigError naming the offending field.
inline ExperimentConfig parse_config(const std::string& text) {
    detail::json root;
    try {
        root = detail::json::parse(text);
    } catch (const detail::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) detail::fail("(root)", "expected an object");
    detail::check_keys(root, "(root)", {"controller", "plant", "run", "sweep"});
    ExperimentConfig cfg;
    if (root.contains("controller")) {
        cfg.controller = detail::parse_controller(root.at("controller"));
    }
    if (root.contains("plant")) cfg.plant = detail::parse_plant(root.at("plant"));
    if (root.contains("run")) cfg.run = detail::parse_run(root.at("run"));
    if (root.contains("sweep")) cfg.sweep = detail::parse_sweep(root.at("sweep"));
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/// Instantiates the controller described by a parsed configuration.
/// Built-in rule names resolve to the shipped tables; inline grids go
/// through the rule-table parser with labels taken from the partitions.
inline Engine make_engine(const ControllerConfig& cfg) {
    if (cfg.inputs.size() != 2) {
        throw ConfigError("config: controller.inputs: expected exactly 2 partitions");
    }
    auto build = [](const PartitionSpec& spec, const std::string& where) {
        try {
            return build_partition(spec.name, spec.z_max, spec.labels.size(),
                                   spec.labels);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("config: " + where + ": " + e.what());
        }
    };
    const Partition phi = build(cfg.inputs[0], "controller.inputs[0]");
    const Partition phidot = build(cfg.inputs[1], "controller.inputs[1]");
    const Partition output = build(cfg.output, "controller.output");

    RuleBase rules;
    if (const auto* name = std::get_if<std::string>(&cfg.rules)) {
        if (*name == "table_I") {
            rules = table_i();
        } else if (*name == "principles_3x3") {
            rules = principles_3x3();
        } else {
            throw ConfigError(
                "config: controller.rules: unknown built-in \"" + *name +
                "\" (expected \"table_I\" or \"principles_3x3\")");
        }
    } else {
        const auto& lines = std::get<std::vector<std::string>>(cfg.rules);
        std::string text;
        for (const auto& line : lines) {
            text += line;
            text += '\n';
        }
        try {
            rules = parse_rulebase(text, phi.labels(), phidot.labels(),
                                   output.labels());
        } catch (const ParseError& e) {
            throw ConfigError(std::string("config: controller.rules: ") + e.what());
        }
    }

    try {
        return Engine(phi, phidot, output, std::move(rules), cfg.mode,
                      cfg.grid_points, cfg.clamp_inputs);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: controller: ") + e.what());
    }
}

/// Assembles the run description from the plant and run blocks; the engine
/// may be null for open-loop runs.
inline RunConfig make_run_config(const ExperimentConfig& cfg,
                                 const Engine* engine) {
    RunConfig rc;
    rc.plant = cfg.plant.params;
    rc.engine = engine;
    rc.phi0 = cfg.run.phi0;
    rc.phidot0 = cfg.run.phidot0;
    rc.horizon_periods = cfg.run.horizon_periods;
    rc.dt = design_period(cfg.plant.params) /
            static_cast<double>(cfg.plant.dt_per_period);
    rc.settle_fraction = cfg.run.settle_fraction;
    rc.phi_scale = cfg.run.phi_scale;
    rc.phidot_scale = cfg.run.phidot_scale;
    return rc;
}

/// Sweep grid selection: explicit list when configured, default grid otherwise.
inline std::vector<double> sweep_grid(const ExperimentConfig& cfg) {
    return cfg.sweep.lengths.value_or(default_length_grid());
}

}  // namespace antisway
