#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "placekit/geom.hpp"
#include "placekit/grasp.hpp"
#include "placekit/placement.hpp"

namespace placekit {

// Logistic weighting of the grasp's vertical clearance above the object's
// lowest point. The transition is centered at z_mid = (z_start + z_end)/2,
// which is always derived, never stored.
struct AltitudeParams {
    double z_start = 0.02;   // meters; clearances below are down-weighted
    double z_end = 0.10;     // meters; clearances above saturate at w_max
    double steepness = 100.0;  // k > 0, 1/meters
    double w_min = 0.1;
    double w_max = 1.0;

    double z_mid() const { return 0.5 * (z_start + z_end); }
    void validate() const;  // throws std::invalid_argument on violation
};

struct UnifiedWeights {
    double grasp = 1.0;  // omega_g
    double place = 1.0;  // omega_p

    void validate() const;  // throws std::invalid_argument unless both > 0
};

// Binary grasp-at-placement feasibility grid, row-major grasps x placements.
// An entry is 0 exactly when the transported gripper collides there.
struct CollisionMatrix {
    std::size_t grasp_count = 0;
    std::size_t placement_count = 0;
    std::vector<std::uint8_t> entries;

    std::uint8_t at(std::size_t k, std::size_t p) const {
        return entries[k * placement_count + p];
    }
};

// Max-normalized scores plus the descending-order view used for candidate
// iteration. `order[i]` is the original index of the i-th best value; ties
// keep the lower original index first. An all-zero input cannot be
// max-normalized and is returned as zeros with `all_zero` set.
struct NormalizedScores {
    std::vector<double> values;
    std::vector<std::size_t> order;
    bool all_zero = false;
};

// The unified grasp-place score grid and the normalized factors it was built
// from. `placement_scores.values` is the per-(grasp, placement) placeability
// flattened row-major, matching `entries`.
struct UnifiedScoreMatrix {
    std::size_t grasp_count = 0;
    std::size_t placement_count = 0;
    std::vector<double> entries;  // v_gp, row-major
    NormalizedScores grasp_scores;
    NormalizedScores placement_scores;

    double at(std::size_t k, std::size_t p) const { return entries[k * placement_count + p]; }
};

struct ScoredPair {
    std::size_t grasp = 0;
    std::size_t placement = 0;
    double score = 0.0;
};

// Placement-conditioned graspability: the sampled quality gated by the
// reachability and collision-freedom indicators.
double pcg_score(double quality, int reachable, int collision_free);

// Vertical clearance of the grasp-frame origin above the lowest point of the
// object cloud posed at the placement. Negative when the grasp reaches below
// the object's lowest point.
double grasp_clearance(const GraspCandidate& grasp_at_placement,
                       const PointCloud& object_at_placement);

double altitude_weight(double clearance, const AltitudeParams& params);

// Combined placeability: product of placement-conditioned graspability,
// stability, altitude weight, and the optional packing heuristic.
double placeability_score(double pcg, double stability, double altitude, double heuristic = 1.0);

// Divides by the maximum so the best value maps to 1.0.
NormalizedScores normalize_scores(const std::vector<double>& values);

// Evaluates every grasp at every placement: transports the grasp from the
// observed pose to the placement pose and collision-tests the gripper solid
// against the environment mesh (margin-inclusive).
CollisionMatrix collision_matrix(const std::vector<GraspCandidate>& grasps,
                                 const std::vector<PlacementCandidate>& placements,
                                 const RigidPose& observed_pose, const TriMesh& environment,
                                 const GripperModel& gripper, double margin);

// Entrywise unified score: v_gp[k][p] = w_g*v_g[k] * w_p*v_p[k][p] * C[k][p].
// `grasp_values` holds one score per grasp; `placement_values` one per
// (grasp, placement) pair, row-major. Both are max-normalized on entry (a
// no-op for already-normalized input). Throws ShapeError on size mismatch.
UnifiedScoreMatrix unified_scores(const std::vector<double>& grasp_values,
                                  const std::vector<double>& placement_values,
                                  const CollisionMatrix& collisions, const UnifiedWeights& weights);

// All positive-score pairs in strictly descending score order; ties broken by
// lower grasp index, then lower placement index. Throws NoFeasiblePair when
// every entry is zero.
std::vector<ScoredPair> select_best_pair(const UnifiedScoreMatrix& m);

}  // namespace placekit
