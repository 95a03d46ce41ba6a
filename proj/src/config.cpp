#include "placekit/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "placekit/errors.hpp"
#include "placekit/format.hpp"

namespace placekit {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, std::size_t line) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &consumed);
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + value + "'", line);
    }
    if (consumed != value.size() || !std::isfinite(v)) {
        throw ParseError("bad numeric value '" + value + "'", line);
    }
    return v;
}

long long parse_int(const std::string& value, std::size_t line) {
    std::size_t consumed = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &consumed);
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + value + "'", line);
    }
    if (consumed != value.size()) throw ParseError("bad integer value '" + value + "'", line);
    return v;
}

bool parse_bool(const std::string& value, std::size_t line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ParseError("expected true or false, got '" + value + "'", line);
}

// One setter per recognized key, keyed by name. The same table drives both
// parsing and the echo, so the two cannot drift apart.
using Setter = std::function<void(RunConfig&, const std::string&, std::size_t)>;

std::map<std::string, Setter> setter_table() {
    std::map<std::string, Setter> t;
    auto set_double = [&](const std::string& key, auto accessor) {
        t[key] = [accessor](RunConfig& c, const std::string& v, std::size_t line) {
            accessor(c) = parse_double(v, line);
        };
    };
    auto set_string = [&](const std::string& key, auto accessor) {
        t[key] = [accessor](RunConfig& c, const std::string& v, std::size_t) {
            accessor(c) = v;
        };
    };

    t["seed"] = [](RunConfig& c, const std::string& v, std::size_t line) {
        const long long n = parse_int(v, line);
        if (n < 0) throw ParseError("seed must be non-negative", line);
        c.seed = static_cast<std::uint64_t>(n);
    };
    t["n_grasps"] = [](RunConfig& c, const std::string& v, std::size_t line) {
        c.n_grasps = static_cast<int>(parse_int(v, line));
    };
    t["n_placements"] = [](RunConfig& c, const std::string& v, std::size_t line) {
        c.n_placements = static_cast<int>(parse_int(v, line));
    };

    set_double("stability.steepness",
               [](RunConfig& c) -> double& { return c.params.stability.logistic_steepness; });
    set_double("stability.center",
               [](RunConfig& c) -> double& { return c.params.stability.logistic_center; });
    set_double("stability.contact_epsilon",
               [](RunConfig& c) -> double& { return c.params.stability.contact_epsilon; });
    t["stability.num_hypotheses"] = [](RunConfig& c, const std::string& v, std::size_t line) {
        c.params.stability.num_hypotheses = static_cast<int>(parse_int(v, line));
    };
    t["stability.seed"] = [](RunConfig& c, const std::string& v, std::size_t line) {
        const long long n = parse_int(v, line);
        if (n < 0) throw ParseError("stability.seed must be non-negative", line);
        c.params.stability.seed = static_cast<std::uint64_t>(n);
    };
    set_double("stability.com_sigma_scale",
               [](RunConfig& c) -> double& { return c.params.stability.com_sigma_scale; });
    set_double("stability.vertical_proximity_ratio", [](RunConfig& c) -> double& {
        return c.params.stability.vertical_proximity_ratio;
    });

    set_double("altitude.z_start",
               [](RunConfig& c) -> double& { return c.params.altitude.z_start; });
    set_double("altitude.z_end", [](RunConfig& c) -> double& { return c.params.altitude.z_end; });
    set_double("altitude.steepness",
               [](RunConfig& c) -> double& { return c.params.altitude.steepness; });
    set_double("altitude.w_min", [](RunConfig& c) -> double& { return c.params.altitude.w_min; });
    set_double("altitude.w_max", [](RunConfig& c) -> double& { return c.params.altitude.w_max; });

    t["heuristic.enabled"] = [](RunConfig& c, const std::string& v, std::size_t line) {
        c.params.use_heuristic = parse_bool(v, line);
    };
    t["heuristic.mode"] = [](RunConfig& c, const std::string& v, std::size_t line) {
        if (v == "dense") {
            c.params.heuristic.mode = PackingHeuristicParams::Mode::dense;
        } else if (v == "sparse") {
            c.params.heuristic.mode = PackingHeuristicParams::Mode::sparse;
        } else {
            throw ParseError("heuristic.mode must be dense or sparse, got '" + v + "'", line);
        }
    };
    set_double("heuristic.closeness_threshold",
               [](RunConfig& c) -> double& { return c.params.heuristic.closeness_threshold; });
    set_double("heuristic.decay_rate",
               [](RunConfig& c) -> double& { return c.params.heuristic.decay_rate; });
    set_double("heuristic.collision_margin",
               [](RunConfig& c) -> double& { return c.params.heuristic.collision_margin; });

    set_double("weights.grasp", [](RunConfig& c) -> double& { return c.params.weights.grasp; });
    set_double("weights.place", [](RunConfig& c) -> double& { return c.params.weights.place; });

    set_double("gripper.palm_x",
               [](RunConfig& c) -> double& { return c.params.gripper.palm_extents.x(); });
    set_double("gripper.palm_y",
               [](RunConfig& c) -> double& { return c.params.gripper.palm_extents.y(); });
    set_double("gripper.palm_z",
               [](RunConfig& c) -> double& { return c.params.gripper.palm_extents.z(); });
    set_double("gripper.finger_x",
               [](RunConfig& c) -> double& { return c.params.gripper.finger_extents.x(); });
    set_double("gripper.finger_y",
               [](RunConfig& c) -> double& { return c.params.gripper.finger_extents.y(); });
    set_double("gripper.finger_z",
               [](RunConfig& c) -> double& { return c.params.gripper.finger_extents.z(); });
    set_double("gripper.max_opening",
               [](RunConfig& c) -> double& { return c.params.gripper.max_opening; });

    set_double("gripper_margin", [](RunConfig& c) -> double& { return c.params.gripper_margin; });
    set_double("placement_margin",
               [](RunConfig& c) -> double& { return c.params.placement_margin; });
    set_double("support_allowance",
               [](RunConfig& c) -> double& { return c.params.support_allowance; });

    set_string("input.object", [](RunConfig& c) -> std::string& { return c.object_path; });
    set_string("input.support", [](RunConfig& c) -> std::string& { return c.support_path; });
    set_string("input.environment",
               [](RunConfig& c) -> std::string& { return c.environment_path; });
    set_string("input.other_objects",
               [](RunConfig& c) -> std::string& { return c.other_objects_path; });
    set_string("input.grasps", [](RunConfig& c) -> std::string& { return c.grasps_path; });
    set_string("output.path", [](RunConfig& c) -> std::string& { return c.output_path; });
    return t;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    const auto setters = setter_table();
    RunConfig config;
    std::set<std::string> seen;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected key=value, got '" + line + "'", line_number);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) throw ParseError("unknown key '" + key + "'", line_number);
        if (!seen.insert(key).second) {
            throw ParseError("duplicate key '" + key + "'", line_number);
        }
        it->second(config, value, line_number);
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file for reading: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::map<std::string, std::string> config_echo(const RunConfig& c) {
    std::map<std::string, std::string> echo;
    echo["seed"] = std::to_string(c.seed);
    echo["n_grasps"] = std::to_string(c.n_grasps);
    echo["n_placements"] = std::to_string(c.n_placements);

    echo["stability.steepness"] = sig9(c.params.stability.logistic_steepness);
    echo["stability.center"] = sig9(c.params.stability.logistic_center);
    echo["stability.contact_epsilon"] = sig9(c.params.stability.contact_epsilon);
    echo["stability.num_hypotheses"] = std::to_string(c.params.stability.num_hypotheses);
    echo["stability.seed"] = std::to_string(c.params.stability.seed);
    echo["stability.com_sigma_scale"] = sig9(c.params.stability.com_sigma_scale);
    echo["stability.vertical_proximity_ratio"] =
        sig9(c.params.stability.vertical_proximity_ratio);

    echo["altitude.z_start"] = sig9(c.params.altitude.z_start);
    echo["altitude.z_end"] = sig9(c.params.altitude.z_end);
    echo["altitude.steepness"] = sig9(c.params.altitude.steepness);
    echo["altitude.w_min"] = sig9(c.params.altitude.w_min);
    echo["altitude.w_max"] = sig9(c.params.altitude.w_max);

    echo["heuristic.enabled"] = c.params.use_heuristic ? "true" : "false";
    echo["heuristic.mode"] =
        c.params.heuristic.mode == PackingHeuristicParams::Mode::dense ? "dense" : "sparse";
    echo["heuristic.closeness_threshold"] = sig9(c.params.heuristic.closeness_threshold);
    echo["heuristic.decay_rate"] = sig9(c.params.heuristic.decay_rate);
    echo["heuristic.collision_margin"] = sig9(c.params.heuristic.collision_margin);

    echo["weights.grasp"] = sig9(c.params.weights.grasp);
    echo["weights.place"] = sig9(c.params.weights.place);

    echo["gripper.palm_x"] = sig9(c.params.gripper.palm_extents.x());
    echo["gripper.palm_y"] = sig9(c.params.gripper.palm_extents.y());
    echo["gripper.palm_z"] = sig9(c.params.gripper.palm_extents.z());
    echo["gripper.finger_x"] = sig9(c.params.gripper.finger_extents.x());
    echo["gripper.finger_y"] = sig9(c.params.gripper.finger_extents.y());
    echo["gripper.finger_z"] = sig9(c.params.gripper.finger_extents.z());
    echo["gripper.max_opening"] = sig9(c.params.gripper.max_opening);

    echo["gripper_margin"] = sig9(c.params.gripper_margin);
    echo["placement_margin"] = sig9(c.params.placement_margin);
    echo["support_allowance"] = sig9(c.params.support_allowance);

    echo["input.object"] = c.object_path;
    echo["input.support"] = c.support_path;
    echo["input.environment"] = c.environment_path;
    echo["input.other_objects"] = c.other_objects_path;
    echo["input.grasps"] = c.grasps_path;
    // output.path is deliberately not echoed: the artifact's bytes must not
    // depend on where it is written, only on what was computed.
    return echo;
}

std::string config_to_text(const RunConfig& config) {
    std::ostringstream out;
    for (const auto& [key, value] : config_echo(config)) out << key << " = " << value << '\n';
    return out.str();
}

}  // namespace placekit
