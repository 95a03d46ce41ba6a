#include "placekit/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace placekit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Lowest extent of the posed cloud along a direction (unit vector).
double min_projection(const PointCloud& cloud, const RigidPose& pose,
                      const Eigen::Vector3d& dir) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& q : cloud.points) lowest = std::min(lowest, dir.dot(pose.apply(q)));
    return lowest;
}

}  // namespace

ReasoningReport run_unified_reasoning(const SceneDescription& scene,
                                      const std::vector<GraspCandidate>& provided_grasps,
                                      const ReasoningParams& params, int n_grasps,
                                      int n_placements, std::uint64_t seed) {
    if (scene.object.cloud.points.empty()) throw EmptyGeometry("object cloud is empty");
    if (scene.target.support.empty()) throw EmptyGeometry("target region has no support mesh");
    if (n_placements < 1) throw std::invalid_argument("placement count must be >= 1");
    if (provided_grasps.empty() && n_grasps < 1) {
        throw std::invalid_argument("grasp count must be >= 1 when no grasps are provided");
    }
    params.stability.validate();
    params.altitude.validate();
    if (params.use_heuristic) params.heuristic.validate();
    params.weights.validate();
    params.gripper.validate();

    ReasoningReport rep;
    rep.params = params;
    const auto t_total = Clock::now();

    // --- Ingestion: grasp acquisition -------------------------------------
    auto t0 = Clock::now();
    if (!provided_grasps.empty()) {
        rep.grasps = provided_grasps;
    } else {
        const PointCloud world_cloud = transform_points(scene.object.pose, scene.object.cloud);
        rep.grasps = sample_antipodal_grasps(world_cloud, params.gripper, n_grasps, seed);
    }
    rep.diagnostics["grasps"] = rep.grasps.size();
    rep.timings.ingestion_s = seconds_since(t0);
    if (rep.grasps.empty()) throw NoFeasiblePair(rep.diagnostics);

    // --- Placability: placement sampling + orientation expansion ----------
    t0 = Clock::now();
    const auto base = sample_placement_poses(scene.target, scene.object, n_placements, seed);
    std::vector<PlacementCandidate> expanded;
    expanded.reserve(base.size() * 6);
    const auto labels = orientation_labels();
    for (const auto& b : base) {
        // Re-rest each variant on the plane the base candidate touched.
        const Eigen::Vector3d normal = b.pose.rotation.col(2);
        const double plane = min_projection(scene.object.cloud, b.pose, normal);
        const auto variants = orientation_set(b.pose);
        for (int i = 0; i < 6; ++i) {
            PlacementCandidate cand;
            cand.pose = variants[i];
            cand.pose.translation +=
                (plane - min_projection(scene.object.cloud, variants[i], normal)) * normal;
            cand.orientation = labels[i];
            expanded.push_back(cand);
        }
    }
    rep.diagnostics["placements_sampled"] = expanded.size();
    rep.timings.placability_s += seconds_since(t0);

    // --- Collision: placement filtering + gripper-vs-scene matrix ---------
    t0 = Clock::now();
    rep.placements = filter_colliding_placements(expanded, scene.object.hull, scene.target,
                                                 params.placement_margin,
                                                 params.support_allowance);
    rep.diagnostics["placements_removed_collision"] = expanded.size() - rep.placements.size();
    if (rep.placements.empty()) {
        rep.timings.collision_s += seconds_since(t0);
        throw NoFeasiblePair(rep.diagnostics);
    }

    std::vector<TriMesh> scenery = {scene.target.environment, scene.target.support};
    scenery.insert(scenery.end(), scene.target.other_objects.begin(),
                   scene.target.other_objects.end());
    const TriMesh scene_mesh = merge_meshes(scenery);
    rep.collisions = collision_matrix(rep.grasps, rep.placements, scene.object.pose, scene_mesh,
                                      params.gripper, params.gripper_margin);
    rep.timings.collision_s += seconds_since(t0);

    // --- Placability: per-candidate component scores ----------------------
    t0 = Clock::now();
    const std::size_t n_k = rep.grasps.size();
    const std::size_t n_p = rep.placements.size();
    rep.breakdown.stability.resize(n_p);
    rep.breakdown.heuristic.resize(n_p);
    rep.breakdown.altitude.resize(n_k * n_p);
    rep.breakdown.pcg.resize(n_k * n_p);
    rep.breakdown.placeability.resize(n_k * n_p);

    std::vector<double> lowest_z(n_p);
    for (std::size_t p = 0; p < n_p; ++p) {
        auto& cand = rep.placements[p];
        const StabilityResult st =
            evaluate_placement_stability(scene.object.cloud, cand.pose, params.stability);
        rep.breakdown.stability[p] = st.score;
        lowest_z[p] = min_projection(scene.object.cloud, cand.pose, Eigen::Vector3d::UnitZ());
        double f_h = 1.0;
        if (params.use_heuristic) {
            const TriMesh posed = transform_mesh(cand.pose, scene.object.hull);
            f_h = packing_heuristic(nearest_object_clearance(posed, scene.target),
                                    params.heuristic);
        }
        rep.breakdown.heuristic[p] = f_h;
        cand.scores.stability = st.score;
        cand.scores.heuristic = f_h;
        cand.scores.altitude_per_grasp.resize(n_k);
    }

    std::size_t unreachable_pairs = 0;
    for (std::size_t k = 0; k < n_k; ++k) {
        for (std::size_t p = 0; p < n_p; ++p) {
            const std::size_t i = k * n_p + p;
            const GraspCandidate moved =
                transform_grasp(rep.grasps[k], scene.object.pose, rep.placements[p].pose);
            const int rm = params.reachability ? reachable(params.reachability, moved) : 1;
            if (!rm) ++unreachable_pairs;
            const double f_pcg =
                pcg_score(rep.grasps[k].quality, rm, rep.collisions.entries[i]);
            const double f_alt =
                altitude_weight(moved.pose.translation.z() - lowest_z[p], params.altitude);
            rep.breakdown.pcg[i] = f_pcg;
            rep.breakdown.altitude[i] = f_alt;
            rep.breakdown.placeability[i] = placeability_score(
                f_pcg, rep.breakdown.stability[p], f_alt, rep.breakdown.heuristic[p]);
            rep.placements[p].scores.altitude_per_grasp[k] = f_alt;
        }
    }
    for (std::size_t p = 0; p < n_p; ++p) {
        double best = 0.0;
        for (std::size_t k = 0; k < n_k; ++k) {
            best = std::max(best, rep.breakdown.placeability[k * n_p + p]);
        }
        rep.placements[p].scores.aggregate = best;
    }
    rep.diagnostics["pairs_total"] = n_k * n_p;
    rep.diagnostics["pairs_removed_gripper_collision"] =
        std::count(rep.collisions.entries.begin(), rep.collisions.entries.end(), 0);
    rep.diagnostics["pairs_removed_unreachable"] = unreachable_pairs;
    rep.timings.placability_s += seconds_since(t0);

    // --- Reasoning: normalization, unified matrix, ranking ----------------
    t0 = Clock::now();
    std::vector<double> grasp_quality(n_k);
    for (std::size_t k = 0; k < n_k; ++k) grasp_quality[k] = rep.grasps[k].quality;
    rep.matrix = unified_scores(grasp_quality, rep.breakdown.placeability, rep.collisions,
                                params.weights);
    rep.diagnostics["pairs_zero_score"] = static_cast<std::size_t>(
        std::count(rep.matrix.entries.begin(), rep.matrix.entries.end(), 0.0));
    try {
        rep.ranked = select_best_pair(rep.matrix);
    } catch (const NoFeasiblePair&) {
        rep.timings.reasoning_s += seconds_since(t0);
        throw NoFeasiblePair(rep.diagnostics);
    }
    rep.timings.reasoning_s += seconds_since(t0);
    rep.timings.total_s = seconds_since(t_total);
    return rep;
}

}  // namespace placekit
