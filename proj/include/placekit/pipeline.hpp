#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "placekit/grasp.hpp"
#include "placekit/object.hpp"
#include "placekit/placement.hpp"
#include "placekit/scoring.hpp"
#include "placekit/stability.hpp"

namespace placekit {

// One pick-and-place problem: the region the object was observed in, the
// region it should move to, and the object itself (cloud + hull + observed
// pose).
struct SceneDescription {
    TargetRegion source;
    TargetRegion target;
    ObjectModel object;
};

// Every knob of a reasoning run in one record so reports can echo their
// exact configuration.
struct ReasoningParams {
    StabilityParams stability;
    AltitudeParams altitude;
    PackingHeuristicParams heuristic;
    bool use_heuristic = false;  // f_H = 1 when disabled
    UnifiedWeights weights;
    GripperModel gripper;
    double gripper_margin = 0.0;      // gripper vs scene, meters
    double placement_margin = 0.0;    // object hull vs scene, meters
    double support_allowance = 0.002;  // forgiven vertical support penetration
    ReachabilityPredicate reachability;  // empty: every pose reachable
};

// Wall-clock stage breakdown, seconds. Grasp acquisition and scene checks
// count as ingestion; placement sampling and all per-candidate component
// scores as placability; object and gripper collision tests as collision;
// normalization, the unified matrix, and ranking as reasoning.
struct StageTimings {
    double ingestion_s = 0.0;
    double placability_s = 0.0;
    double collision_s = 0.0;
    double reasoning_s = 0.0;
    double total_s = 0.0;
};

// Raw per-candidate factor values, kept so any ranked score can be re-derived
// from its components. Pair grids are row-major grasps x placements.
struct ComponentBreakdown {
    std::vector<double> stability;     // per placement
    std::vector<double> heuristic;     // per placement
    std::vector<double> altitude;      // per pair
    std::vector<double> pcg;           // per pair
    std::vector<double> placeability;  // per pair, pre-normalization
};

struct ReasoningReport {
    std::vector<GraspCandidate> grasps;          // world frame, observed pose
    std::vector<PlacementCandidate> placements;  // survivors, scores filled in
    ComponentBreakdown breakdown;
    CollisionMatrix collisions;
    UnifiedScoreMatrix matrix;
    std::vector<ScoredPair> ranked;
    StageTimings timings;
    std::map<std::string, std::size_t> diagnostics;  // per-stage candidate counts
    ReasoningParams params;                          // echo of the run configuration
};

// The full reasoning chain: acquire grasps (the provided set wins over the
// synthetic sampler), sample placements and expand the six orientation
// variants, drop colliding placements, score stability / graspability /
// altitude / heuristic per candidate, assemble the unified matrix, and rank
// the pairs. Deterministic per seed. Throws NoFeasiblePair (with stage
// counts) when nothing survives.
ReasoningReport run_unified_reasoning(const SceneDescription& scene,
                                      const std::vector<GraspCandidate>& provided_grasps,
                                      const ReasoningParams& params, int n_grasps,
                                      int n_placements, std::uint64_t seed);

}  // namespace placekit
