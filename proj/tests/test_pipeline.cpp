#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>

#include "doctest.h"
#include "placekit/errors.hpp"
#include "placekit/oracle.hpp"
#include "placekit/pipeline.hpp"

using namespace placekit;

namespace {

// Axis-aligned box mesh spanning [lo, hi].
TriMesh box_between(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
    RigidPose shift;
    shift.translation = 0.5 * (lo + hi);
    return transform_mesh(shift, make_box_mesh(hi - lo));
}

ObjectModel resting_object(const Eigen::Vector3d& extents, int n_points, std::uint64_t seed) {
    const SyntheticObject obj = make_uniform_box_object(extents);
    ObjectModel model;
    model.cloud = sample_object_cloud(obj, n_points, seed);
    model.hull = convex_hull_3d(model.cloud.points);
    return model;  // observed at identity, resting on z = 0
}

// Open table: a single slab whose top face is the z = 0 plane.
SceneDescription tabletop_scene(const ObjectModel& object) {
    SceneDescription scene;
    scene.object = object;
    scene.target.support = box_between({-0.25, -0.25, -0.04}, {0.25, 0.25, 0.0});
    return scene;
}

// Closed shelf: floor, low ceiling, and a thick wall ring. Interior space is
// x in [-0.25, 0.25], y in [-0.2, 0.2], z in [0, 0.15].
SceneDescription walled_shelf_scene(const ObjectModel& object) {
    SceneDescription scene;
    scene.object = object;
    scene.target.support = box_between({-0.33, -0.28, -0.03}, {0.33, 0.28, 0.0});
    scene.target.environment = merge_meshes({
        box_between({-0.33, -0.28, 0.15}, {0.33, 0.28, 0.18}),   // ceiling
        box_between({0.25, -0.28, 0.0}, {0.33, 0.28, 0.15}),     // +x wall
        box_between({-0.33, -0.28, 0.0}, {-0.25, 0.28, 0.15}),   // -x wall
        box_between({-0.33, 0.2, 0.0}, {0.33, 0.28, 0.15}),      // +y wall
        box_between({-0.33, -0.28, 0.0}, {0.33, -0.2, 0.15}),    // -y wall
    });
    return scene;
}

// Open-sided shelf: floor slab plus an oversized ceiling that blocks any
// gripper reaching above it, with free space at the sides.
SceneDescription open_shelf_scene(const ObjectModel& object) {
    SceneDescription scene;
    scene.object = object;
    scene.target.support = box_between({-0.25, -0.2, -0.03}, {0.25, 0.2, 0.0});
    scene.target.environment = box_between({-0.6, -0.6, 0.26}, {0.6, 0.6, 0.29});
    return scene;
}

GraspCandidate fixed_grasp(const RigidPose& pose, double width, double quality) {
    GraspCandidate g;
    g.pose = pose;
    g.width = width;
    g.quality = quality;
    return g;
}

bool lying_label(OrientationLabel label) {
    return label == OrientationLabel::pitch_p90 || label == OrientationLabel::pitch_m90 ||
           label == OrientationLabel::roll_p90 || label == OrientationLabel::roll_m90;
}

}  // namespace

TEST_CASE("tabletop run: top pair is stable and collision-free") {
    const ObjectModel object = resting_object({0.08, 0.08, 0.08}, 5000, 11);
    const SceneDescription scene = tabletop_scene(object);
    ReasoningParams params;

    const ReasoningReport rep = run_unified_reasoning(scene, {}, params, 30, 8, 3);

    REQUIRE(!rep.grasps.empty());
    REQUIRE(!rep.placements.empty());
    REQUIRE(!rep.ranked.empty());
    const ScoredPair& top = rep.ranked.front();
    CHECK(rep.collisions.at(top.grasp, top.placement) == 1);
    CHECK(rep.breakdown.stability[top.placement] >= 0.9);
    CHECK(top.score == rep.matrix.at(top.grasp, top.placement));
    CHECK(top.score > 0.0);
    CHECK(top.score <= 1.0 + 1e-12);
}

TEST_CASE("tabletop run: report bookkeeping is coherent") {
    const ObjectModel object = resting_object({0.08, 0.08, 0.08}, 5000, 11);
    const SceneDescription scene = tabletop_scene(object);
    ReasoningParams params;

    const ReasoningReport rep = run_unified_reasoning(scene, {}, params, 20, 6, 3);
    const std::size_t n_k = rep.grasps.size();
    const std::size_t n_p = rep.placements.size();

    SUBCASE("matrix and breakdown shapes match the candidate counts") {
        CHECK(rep.collisions.grasp_count == n_k);
        CHECK(rep.collisions.placement_count == n_p);
        CHECK(rep.matrix.grasp_count == n_k);
        CHECK(rep.matrix.placement_count == n_p);
        CHECK(rep.breakdown.stability.size() == n_p);
        CHECK(rep.breakdown.heuristic.size() == n_p);
        CHECK(rep.breakdown.altitude.size() == n_k * n_p);
        CHECK(rep.breakdown.pcg.size() == n_k * n_p);
        CHECK(rep.breakdown.placeability.size() == n_k * n_p);
        for (std::size_t p = 0; p < n_p; ++p) {
            CHECK(rep.placements[p].scores.altitude_per_grasp.size() == n_k);
        }
    }

    SUBCASE("diagnostics count every stage") {
        CHECK(rep.diagnostics.at("grasps") == n_k);
        CHECK(rep.diagnostics.at("placements_sampled") ==
              n_p + rep.diagnostics.at("placements_removed_collision"));
        CHECK(rep.diagnostics.at("pairs_total") == n_k * n_p);
        CHECK(rep.diagnostics.at("pairs_zero_score") ==
              n_k * n_p - rep.ranked.size());
    }

    SUBCASE("per-placement scores recompose from the breakdown") {
        for (std::size_t p = 0; p < n_p; ++p) {
            CHECK(rep.placements[p].scores.stability == rep.breakdown.stability[p]);
            CHECK(rep.placements[p].scores.heuristic == rep.breakdown.heuristic[p]);
            double best = 0.0;
            for (std::size_t k = 0; k < n_k; ++k) {
                CHECK(rep.placements[p].scores.altitude_per_grasp[k] ==
                      rep.breakdown.altitude[k * n_p + p]);
                best = std::max(best, rep.breakdown.placeability[k * n_p + p]);
            }
            CHECK(rep.placements[p].scores.aggregate == best);
        }
    }

    SUBCASE("stage timings are non-negative and nested inside the total") {
        const StageTimings& t = rep.timings;
        CHECK(t.ingestion_s >= 0.0);
        CHECK(t.placability_s >= 0.0);
        CHECK(t.collision_s >= 0.0);
        CHECK(t.reasoning_s >= 0.0);
        CHECK(t.total_s >= t.ingestion_s + t.placability_s + t.collision_s + t.reasoning_s);
    }

    SUBCASE("parameter echo reproduces the run configuration") {
        CHECK(rep.params.gripper_margin == params.gripper_margin);
        CHECK(rep.params.placement_margin == params.placement_margin);
        CHECK(rep.params.support_allowance == params.support_allowance);
        CHECK(rep.params.weights.grasp == params.weights.grasp);
        CHECK(rep.params.stability.num_hypotheses == params.stability.num_hypotheses);
    }
}

TEST_CASE("every ranked pair passed every feasibility gate") {
    const ObjectModel object = resting_object({0.08, 0.08, 0.08}, 5000, 11);
    const SceneDescription scene = tabletop_scene(object);
    ReasoningParams params;

    const ReasoningReport rep = run_unified_reasoning(scene, {}, params, 30, 8, 5);
    const std::size_t n_p = rep.placements.size();
    REQUIRE(!rep.ranked.empty());

    for (std::size_t r = 0; r < rep.ranked.size(); ++r) {
        const ScoredPair& pair = rep.ranked[r];
        const std::size_t i = pair.grasp * n_p + pair.placement;
        CHECK(pair.score > 0.0);
        CHECK(rep.collisions.entries[i] == 1);
        CHECK(rep.breakdown.stability[pair.placement] > 0.0);
        CHECK(rep.breakdown.pcg[i] > 0.0);
        if (r > 0) {
            const ScoredPair& prev = rep.ranked[r - 1];
            const bool ordered =
                prev.score > pair.score ||
                (prev.score == pair.score &&
                 (prev.grasp < pair.grasp ||
                  (prev.grasp == pair.grasp && prev.placement < pair.placement)));
            CHECK(ordered);
        }
    }
}

TEST_CASE("ranked scores recompose from the component breakdown") {
    const ObjectModel object = resting_object({0.08, 0.08, 0.08}, 5000, 11);
    const SceneDescription scene = tabletop_scene(object);
    ReasoningParams params;
    params.weights.grasp = 0.8;
    params.weights.place = 1.3;

    const ReasoningReport rep = run_unified_reasoning(scene, {}, params, 25, 8, 5);
    const std::size_t n_p = rep.placements.size();
    REQUIRE(!rep.ranked.empty());

    double max_quality = 0.0;
    for (const auto& g : rep.grasps) max_quality = std::max(max_quality, g.quality);
    const double max_place =
        *std::max_element(rep.breakdown.placeability.begin(), rep.breakdown.placeability.end());
    REQUIRE(max_quality > 0.0);
    REQUIRE(max_place > 0.0);

    for (const ScoredPair& pair : rep.ranked) {
        const std::size_t i = pair.grasp * n_p + pair.placement;
        // Factor product: pcg * stability * altitude * heuristic.
        const double recomposed_place = rep.breakdown.pcg[i] *
                                        rep.breakdown.stability[pair.placement] *
                                        rep.breakdown.altitude[i] *
                                        rep.breakdown.heuristic[pair.placement];
        CHECK(std::abs(recomposed_place - rep.breakdown.placeability[i]) <= 1e-12);
        // Unified score: weighted normalized grasp value times weighted
        // normalized placeability times the collision gate.
        const double recomposed_score = (params.weights.grasp *
                                         (rep.grasps[pair.grasp].quality / max_quality)) *
                                        (params.weights.place *
                                         (rep.breakdown.placeability[i] / max_place)) *
                                        double(rep.collisions.entries[i]);
        CHECK(std::abs(recomposed_score - pair.score) <= 1e-12);
    }
}

TEST_CASE("same scene, same seed: identical report") {
    const ObjectModel object = resting_object({0.08, 0.08, 0.08}, 4000, 17);
    const SceneDescription scene = tabletop_scene(object);
    ReasoningParams params;

    const ReasoningReport a = run_unified_reasoning(scene, {}, params, 20, 6, 9);
    const ReasoningReport b = run_unified_reasoning(scene, {}, params, 20, 6, 9);

    REQUIRE(a.grasps.size() == b.grasps.size());
    for (std::size_t k = 0; k < a.grasps.size(); ++k) {
        CHECK((a.grasps[k].pose.rotation - b.grasps[k].pose.rotation).norm() == 0.0);
        CHECK((a.grasps[k].pose.translation - b.grasps[k].pose.translation).norm() == 0.0);
        CHECK(a.grasps[k].width == b.grasps[k].width);
        CHECK(a.grasps[k].quality == b.grasps[k].quality);
    }
    REQUIRE(a.placements.size() == b.placements.size());
    for (std::size_t p = 0; p < a.placements.size(); ++p) {
        CHECK((a.placements[p].pose.rotation - b.placements[p].pose.rotation).norm() == 0.0);
        CHECK((a.placements[p].pose.translation - b.placements[p].pose.translation).norm() ==
              0.0);
        CHECK(a.placements[p].orientation == b.placements[p].orientation);
        CHECK(a.placements[p].scores.aggregate == b.placements[p].scores.aggregate);
    }
    CHECK(a.breakdown.stability == b.breakdown.stability);
    CHECK(a.breakdown.heuristic == b.breakdown.heuristic);
    CHECK(a.breakdown.altitude == b.breakdown.altitude);
    CHECK(a.breakdown.pcg == b.breakdown.pcg);
    CHECK(a.breakdown.placeability == b.breakdown.placeability);
    CHECK(a.collisions.entries == b.collisions.entries);
    CHECK(a.matrix.entries == b.matrix.entries);
    REQUIRE(a.ranked.size() == b.ranked.size());
    for (std::size_t r = 0; r < a.ranked.size(); ++r) {
        CHECK(a.ranked[r].grasp == b.ranked[r].grasp);
        CHECK(a.ranked[r].placement == b.ranked[r].placement);
        CHECK(a.ranked[r].score == b.ranked[r].score);
    }
    CHECK(a.diagnostics == b.diagnostics);
}

TEST_CASE("enclosed shelf eliminates every top-grasp pair") {
    // A 0.1 m cube inside a shelf whose interior is 0.15 m tall. The only
    // grasp approaches the cube's top face. Upright, the gripper stack hits
    // the ceiling; flipped, it digs into the floor; pitched, the palm hovers
    // within the collision margin of the floor or enters a wall; rolled, one
    // finger dips below the floor plane.
    const ObjectModel object = resting_object({0.1, 0.1, 0.1}, 5000, 23);
    const SceneDescription scene = walled_shelf_scene(object);
    ReasoningParams params;
    params.gripper_margin = 0.01;

    RigidPose top;
    top.translation = {0.0, 0.0, 0.1};
    const std::vector<GraspCandidate> grasps = {fixed_grasp(top, 0.08, 0.9)};

    bool threw = false;
    try {
        run_unified_reasoning(scene, grasps, params, 1, 40, 7);
    } catch (const NoFeasiblePair& e) {
        threw = true;
        CHECK(e.diagnostics.at("grasps") == 1);
        CHECK(e.diagnostics.at("pairs_total") > 0);
        CHECK(e.diagnostics.at("pairs_removed_gripper_collision") ==
              e.diagnostics.at("pairs_total"));
        CHECK(e.diagnostics.at("pairs_zero_score") == e.diagnostics.at("pairs_total"));
    }
    CHECK(threw);
}

TEST_CASE("grasp choice flips the winning placement orientation") {
    // Tall box under an overhanging ceiling. A top grasp forces the box to
    // lie down (upright, the gripper reaches into the ceiling); a side grasp
    // prefers upright, where its clearance above the surface is largest.
    const ObjectModel object = resting_object({0.1, 0.1, 0.22}, 6000, 29);
    const SceneDescription scene = open_shelf_scene(object);
    ReasoningParams params;

    RigidPose top;
    top.translation = {0.0, 0.0, 0.22};
    RigidPose side = axis_angle_pose(Eigen::Vector3d::UnitX(), M_PI / 2.0);
    side.translation = {0.0, -0.05, 0.11};

    const ReasoningReport top_run =
        run_unified_reasoning(scene, {fixed_grasp(top, 0.08, 0.9)}, params, 1, 6, 13);
    const ReasoningReport side_run =
        run_unified_reasoning(scene, {fixed_grasp(side, 0.08, 0.9)}, params, 1, 6, 13);

    REQUIRE(!top_run.ranked.empty());
    REQUIRE(!side_run.ranked.empty());
    CHECK(top_run.ranked.front().score > 0.0);
    CHECK(side_run.ranked.front().score > 0.0);

    const OrientationLabel top_winner =
        top_run.placements[top_run.ranked.front().placement].orientation;
    const OrientationLabel side_winner =
        side_run.placements[side_run.ranked.front().placement].orientation;
    CHECK(lying_label(top_winner));
    CHECK(!lying_label(side_winner));
    CHECK(top_winner != side_winner);
}

TEST_CASE("input validation") {
    const ObjectModel object = resting_object({0.08, 0.08, 0.08}, 500, 11);
    const SceneDescription scene = tabletop_scene(object);
    ReasoningParams params;

    SUBCASE("empty object cloud") {
        SceneDescription bad = scene;
        bad.object.cloud.points.clear();
        bad.object.cloud.normals.clear();
        CHECK_THROWS_AS(run_unified_reasoning(bad, {}, params, 5, 5, 1), EmptyGeometry);
    }
    SUBCASE("missing support mesh") {
        SceneDescription bad = scene;
        bad.target.support = TriMesh{};
        CHECK_THROWS_AS(run_unified_reasoning(bad, {}, params, 5, 5, 1), EmptyGeometry);
    }
    SUBCASE("candidate counts must be positive") {
        CHECK_THROWS_AS(run_unified_reasoning(scene, {}, params, 0, 5, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(run_unified_reasoning(scene, {}, params, 5, 0, 1),
                        std::invalid_argument);
    }
    SUBCASE("invalid parameter records are rejected") {
        ReasoningParams bad = params;
        bad.weights.grasp = 0.0;
        CHECK_THROWS_AS(run_unified_reasoning(scene, {}, bad, 5, 5, 1), std::invalid_argument);
    }
}
