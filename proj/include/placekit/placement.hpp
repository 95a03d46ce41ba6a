#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "placekit/geom.hpp"
#include "placekit/object.hpp"

namespace placekit {

// Placement destination. `environment` holds the obstacle geometry around the
// placement area (walls, ceilings, fixtures) excluding the support surface
// itself, which is tested separately with a resting-contact allowance.
struct TargetRegion {
    TriMesh support;
    TriMesh environment;
    std::vector<TriMesh> other_objects;
};

enum class OrientationLabel {
    observed,
    pitch_p90,  // +90 deg about x
    pitch_m90,  // -90 deg about x
    roll_p90,   // +90 deg about y
    roll_m90,   // -90 deg about y
    flip,       // 180 deg about x
};

const char* to_string(OrientationLabel label);

struct PlacementScores {
    double stability = 0.0;                  // f_st
    std::vector<double> altitude_per_grasp;  // f_alt, one per grasp candidate
    double heuristic = 1.0;                  // f_H
    double aggregate = 0.0;                  // best placeability across grasps
};

struct PlacementCandidate {
    RigidPose pose;  // m_p
    OrientationLabel orientation = OrientationLabel::observed;
    PlacementScores scores;
};

// Uniform-by-area surface sampling on the upward-facing part of the support
// mesh. Each candidate aligns the object's local z to the surface normal,
// applies a uniform random yaw about it, and rests the object so its lowest
// cloud point touches the surface. Deterministic per seed.
std::vector<PlacementCandidate> sample_placement_poses(const TargetRegion& region,
                                                       const ObjectModel& object, int n,
                                                       std::uint64_t seed);

// The six candidate reorientations of a placement pose, composed in the
// object's local frame: identity, +-90 deg about x, +-90 deg about y, and a
// 180 deg flip about x as the sixth member.
std::array<RigidPose, 6> orientation_set(const RigidPose& m);
std::array<OrientationLabel, 6> orientation_labels();

// Keeps candidates whose posed object hull stays clear of the environment and
// the other objects (margin-inclusive). Contact with the support surface is
// exempt up to `support_allowance` of vertical interpenetration so resting
// placements are not rejected.
std::vector<PlacementCandidate> filter_colliding_placements(
    const std::vector<PlacementCandidate>& candidates, const TriMesh& object_hull,
    const TargetRegion& region, double margin, double support_allowance = 0.002);

// Minimum distance from the posed object hull to any other object in the
// region; +infinity when the region holds no other objects.
double nearest_object_clearance(const TriMesh& object_hull_at_pose, const TargetRegion& region);

struct PackingHeuristicParams {
    double closeness_threshold = 0.05;  // tau, meters
    double decay_rate = 25.0;           // k > 0, 1/meters
    double collision_margin = 0.005;    // meters; below this the pose scores 0
    enum class Mode { dense, sparse } mode = Mode::dense;

    void validate() const;  // throws std::invalid_argument on violation
};

// Clearance preference in [0,1]. Dense mode rewards neighbours within tau and
// decays exponentially beyond; sparse mode mirrors it by inverting the
// distance about tau. Distances below the collision margin score 0.
double packing_heuristic(double distance, const PackingHeuristicParams& params);

}  // namespace placekit
