#include "placekit/report_json.hpp"

#include <cstdlib>

#include "json.hpp"
#include "placekit/format.hpp"

namespace placekit {

namespace {

using nlohmann::json;

// Rounds through the 9-significant-digit text form so the serialized number
// is identical no matter which run produced the value.
json num(double v) { return json(std::strtod(sig9(v).c_str(), nullptr)); }

json num_array(const std::vector<double>& values) {
    json arr = json::array();
    for (double v : values) arr.push_back(num(v));
    return arr;
}

// Row-major flat vector -> array of per-grasp rows.
template <typename T, typename Convert>
json grid(const std::vector<T>& flat, std::size_t rows, std::size_t cols, Convert convert) {
    json out = json::array();
    for (std::size_t k = 0; k < rows; ++k) {
        json row = json::array();
        for (std::size_t p = 0; p < cols; ++p) row.push_back(convert(flat[k * cols + p]));
        out.push_back(std::move(row));
    }
    return out;
}

// Pose as the row-major 3x4 [R | t] block, matching the grasp file format.
json pose_array(const RigidPose& pose) {
    json arr = json::array();
    for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) arr.push_back(num(pose.rotation(row, col)));
        arr.push_back(num(pose.translation(row)));
    }
    return arr;
}

json grasp_json(const GraspCandidate& g) {
    return json{{"pose", pose_array(g.pose)}, {"quality", num(g.quality)},
                {"width", num(g.width)}};
}

json placement_json(const PlacementCandidate& p) {
    return json{{"orientation", to_string(p.orientation)},
                {"pose", pose_array(p.pose)},
                {"scores", json{{"aggregate", num(p.scores.aggregate)},
                                {"altitude_per_grasp", num_array(p.scores.altitude_per_grasp)},
                                {"heuristic", num(p.scores.heuristic)},
                                {"stability", num(p.scores.stability)}}}};
}

json diagnostics_json(const std::map<std::string, std::size_t>& diagnostics) {
    json out = json::object();
    for (const auto& [key, value] : diagnostics) out[key] = value;
    return out;
}

json echo_json(const std::map<std::string, std::string>& echo) {
    json out = json::object();
    for (const auto& [key, value] : echo) out[key] = value;
    return out;
}

}  // namespace

std::string report_to_json(const ReasoningReport& report,
                           const std::map<std::string, std::string>& config_echo,
                           bool include_timings) {
    const std::size_t n_k = report.collisions.grasp_count;
    const std::size_t n_p = report.collisions.placement_count;

    json doc;
    doc["config"] = echo_json(config_echo);
    doc["diagnostics"] = diagnostics_json(report.diagnostics);

    json grasps = json::array();
    for (const auto& g : report.grasps) grasps.push_back(grasp_json(g));
    doc["grasps"] = std::move(grasps);

    json placements = json::array();
    for (const auto& p : report.placements) placements.push_back(placement_json(p));
    doc["placements"] = std::move(placements);

    doc["collision_matrix"] =
        grid(report.collisions.entries, n_k, n_p, [](std::uint8_t v) { return json(int(v)); });
    doc["breakdown"] =
        json{{"altitude", grid(report.breakdown.altitude, n_k, n_p, num)},
             {"heuristic", num_array(report.breakdown.heuristic)},
             {"pcg", grid(report.breakdown.pcg, n_k, n_p, num)},
             {"placeability", grid(report.breakdown.placeability, n_k, n_p, num)},
             {"stability", num_array(report.breakdown.stability)}};
    doc["unified"] = json{{"entries", grid(report.matrix.entries, n_k, n_p, num)},
                          {"grasp_scores", num_array(report.matrix.grasp_scores.values)},
                          {"placement_scores",
                           grid(report.matrix.placement_scores.values, n_k, n_p, num)}};

    json ranked = json::array();
    for (const auto& pair : report.ranked) {
        ranked.push_back(json{{"grasp", pair.grasp},
                              {"placement", pair.placement},
                              {"score", num(pair.score)}});
    }
    doc["ranked"] = std::move(ranked);

    if (include_timings) {
        doc["timings"] = json{{"collision_s", num(report.timings.collision_s)},
                              {"ingestion_s", num(report.timings.ingestion_s)},
                              {"placability_s", num(report.timings.placability_s)},
                              {"reasoning_s", num(report.timings.reasoning_s)},
                              {"total_s", num(report.timings.total_s)}};
    }
    return doc.dump(2) + "\n";
}

std::string placements_to_json(const std::vector<PlacementCandidate>& placements,
                               const std::map<std::string, std::size_t>& diagnostics,
                               const std::map<std::string, std::string>& config_echo) {
    json doc;
    doc["config"] = echo_json(config_echo);
    doc["diagnostics"] = diagnostics_json(diagnostics);
    json list = json::array();
    for (const auto& p : placements) list.push_back(placement_json(p));
    doc["placements"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string error_to_json(const std::string& kind, const std::string& message,
                          const std::map<std::string, std::size_t>& diagnostics, long line) {
    json doc;
    doc["error"] = kind;
    doc["message"] = message;
    if (line >= 0) doc["line"] = line;
    if (!diagnostics.empty()) doc["diagnostics"] = diagnostics_json(diagnostics);
    return doc.dump(2) + "\n";
}

}  // namespace placekit
