#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "placekit/pipeline.hpp"

namespace placekit {

// Full configuration of a run: every tunable parameter plus seed, candidate
// counts, and optional input/output paths. Loaded from a flat key=value text
// file; keys not listed in the documentation are rejected, missing keys keep
// their defaults.
struct RunConfig {
    ReasoningParams params;
    std::uint64_t seed = 0;
    int n_grasps = 100;
    int n_placements = 100;

    // Input/output paths; command-line flags take precedence over these.
    std::string object_path;
    std::string support_path;
    std::string environment_path;
    std::string other_objects_path;  // comma-separated list of mesh files
    std::string grasps_path;
    std::string output_path;
};

// Parses key=value lines ('#' comments and blank lines allowed, duplicate
// keys rejected) on top of the defaults. Throws ParseError with the
// offending line number on unknown keys, duplicates, or bad values.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

// The effective configuration as a sorted key -> value map covering every
// recognized key. Doubles are rendered with 9 significant digits, which
// makes the echo a fixed point: parsing it back and echoing again
// reproduces the same text.
std::map<std::string, std::string> config_echo(const RunConfig& config);

// The echo rendered as a loadable key=value document, one key per line.
std::string config_to_text(const RunConfig& config);

}  // namespace placekit
