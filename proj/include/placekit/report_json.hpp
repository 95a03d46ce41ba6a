#pragma once

#include <map>
#include <string>

#include "placekit/pipeline.hpp"

namespace placekit {

// JSON rendering of pipeline artifacts. Keys are emitted in sorted order and
// every floating-point value is canonicalized to 9 significant digits before
// serialization, so identical runs produce byte-identical documents. Stage
// timings vary between runs and are therefore excluded unless
// `include_timings` is set.
std::string report_to_json(const ReasoningReport& report,
                           const std::map<std::string, std::string>& config_echo,
                           bool include_timings = false);

// Placement-only view: the scored candidates plus diagnostics and the config
// echo. Used when the caller asked for placements rather than ranked pairs;
// an empty candidate list is a valid result here, not an error.
std::string placements_to_json(const std::vector<PlacementCandidate>& placements,
                               const std::map<std::string, std::size_t>& diagnostics,
                               const std::map<std::string, std::string>& config_echo);

// Machine-readable error document: {"error": kind, "message": ...} plus
// optional context fields (line number, per-stage diagnostics).
std::string error_to_json(const std::string& kind, const std::string& message,
                          const std::map<std::string, std::size_t>& diagnostics = {},
                          long line = -1);

}  // namespace placekit
