#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "placekit/bvh.hpp"
#include "placekit/geom.hpp"

namespace placekit {

// Gripper frame convention: closing axis x, approach along -z (the gripper
// travels along its -z axis toward the grasp; the palm sits on the +z side).
struct GraspCandidate {
    RigidPose pose;
    double width = 0.0;    // required opening, meters, in (0, max_opening]
    double quality = 0.0;  // q in [0, 1]
};

struct GripperModel {
    Eigen::Vector3d palm_extents = Eigen::Vector3d(0.09, 0.09, 0.05);
    Eigen::Vector3d finger_extents = Eigen::Vector3d(0.02, 0.01, 0.06);
    double max_opening = 0.085;

    void validate() const;  // throws std::invalid_argument on violation
};

// Pluggable kinematic-feasibility test; must be deterministic and total.
using ReachabilityPredicate = std::function<bool(const RigidPose&)>;

// Default predicate: accepts poses whose translation lies inside the
// axis-aligned box [lo, hi] (inclusive).
ReachabilityPredicate workspace_box_predicate(const Eigen::Vector3d& lo,
                                              const Eigen::Vector3d& hi);

// Draws random contact pairs from the cloud and keeps pairs whose outward
// normals oppose each other along the closing direction within the gripper
// opening. Quality = antipodality max(0, -dot(n1,n2)) damped near the opening
// limit. Deterministic per seed; returns up to n candidates.
std::vector<GraspCandidate> sample_antipodal_grasps(const PointCloud& cloud,
                                                    const GripperModel& gripper, int n,
                                                    std::uint64_t seed);

// Rigidly transports a grasp sampled at object pose m_o to the object at pose
// m_p: out.pose = m_p * inverse(m_o) * g.pose. Width and quality unchanged.
GraspCandidate transform_grasp(const GraspCandidate& g, const RigidPose& m_o,
                               const RigidPose& m_p);

int reachable(const ReachabilityPredicate& pred, const GraspCandidate& g);

// Simplified gripper solid: palm box plus two finger boxes separated by the
// grasp width, posed in the world. Exposed for collision checks and tests.
TriMesh gripper_mesh(const GripperModel& gripper, const RigidPose& pose, double width);

// True iff any of the three posed gripper boxes comes within margin of env.
bool gripper_collides(const GraspCandidate& g, const GripperModel& gripper, const TriMesh& env,
                      double margin);
// Same test against a prebuilt environment tree (hot path for score matrices).
bool gripper_collides(const GraspCandidate& g, const GripperModel& gripper, const MeshBvh& env,
                      double margin);

}  // namespace placekit
