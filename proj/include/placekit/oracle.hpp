#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "placekit/geom.hpp"
#include "placekit/stability.hpp"

namespace placekit {

// Analytically tractable stand-in for a real object, expressed in its resting
// frame: bottom on z = 0, footprint centered on the z axis. The true center
// of mass and resting support polygon are known exactly, so quasi-static
// tipping can be decided in closed form.
struct SyntheticObject {
    TriMesh mesh;
    Eigen::Vector3d true_com = Eigen::Vector3d::Zero();
    Polygon2D footprint;  // convex resting support polygon (xy, CCW)
    Eigen::Vector2d footprint_half_extents = Eigen::Vector2d::Zero();
    std::string label;
    // Exponential tilt of the surface sampling density, chosen so the cloud
    // mean reproduces the true CoM. Zero for uniform-density objects.
    Eigen::Vector3d density_tilt = Eigen::Vector3d::Zero();
};

// extents = full widths (x, y, z); CoM at the geometric center.
SyntheticObject make_uniform_box_object(const Eigen::Vector3d& extents);

// Box whose mass center is displaced along +x by com_shift_fraction of the
// full width. A shift of 0.25 tips at 25% overhang on the heavy side and 75%
// on the light side.
SyntheticObject make_offset_box_object(const Eigen::Vector3d& extents, double com_shift_fraction);

SyntheticObject make_cylinder_object(double radius, double height, int segments = 48);

// L-shaped prism: the union of a horizontal arm along x and a vertical arm
// along y (both of width arm_width) inside the footprint box [-x/2, x/2] x
// [-y/2, y/2], extruded to the given height.
SyntheticObject make_l_shape_object(const Eigen::Vector3d& extents, double arm_width);

// Area-weighted surface samples with outward face normals. The object's
// density tilt skews the draw (exact rejection sampling) so the sample mean
// converges to the true CoM. Deterministic per seed.
PointCloud sample_object_cloud(const SyntheticObject& obj, int n, std::uint64_t seed);

// Ground truth: a posed rigid body is stable exactly when its true CoM
// projects vertically into the support polygon (boundary inclusive).
bool quasi_static_stable(const SyntheticObject& obj, const RigidPose& pose,
                         const Polygon2D& support);

// One validation sweep: the stability score sampled along an abscissa
// (overhang fraction or incline angle), the 0.5-crossing of the curve, and
// the analytic tipping threshold it is compared against.
struct SweepResult {
    std::string abscissa_label;
    std::vector<double> abscissa;
    std::vector<double> scores;
    double estimated_threshold = 0.0;
    double oracle_threshold = 0.0;
};

// Slides the object over a table edge along +x: at overhang fraction o the
// support polygon is clipped at the edge plane, the stability score evaluated
// (same hypothesis seed at every step), and the score's 0.5-crossing compared
// against a bisection of the quasi-static oracle.
SweepResult edge_sweep(const SyntheticObject& obj, const PointCloud& cloud, int steps,
                       const StabilityParams& params);

// Tilts the support plane through the given angles (degrees, increasing,
// within [0, 60]): gravity is inclined toward +x, the score evaluated per
// angle, and the crossing compared against the analytic tipping angle
// atan(downhill footprint extent / CoM height).
SweepResult incline_sweep(const SyntheticObject& obj, const PointCloud& cloud,
                          const std::vector<double>& angles_deg, const StabilityParams& params);

// Header row, one row per abscissa point, and a trailing comment row carrying
// both thresholds.
std::string to_csv(const SweepResult& r);

struct PartialCloudResult {
    PointCloud cloud;
    double coverage = 0.0;  // visible fraction of the mesh surface area
};

// Simulated partial observation: area-uniform surface samples kept when at
// least one viewpoint sees them (back-face and occlusion culled via ray
// casting), then perturbed along their normals with Gaussian noise.
PartialCloudResult synthesize_partial_cloud(const TriMesh& mesh,
                                            const std::vector<Eigen::Vector3d>& viewpoints,
                                            double noise_sigma, std::uint64_t seed,
                                            int target_samples = 20000);

struct PoseDeviation {
    double rotation_deg = 0.0;
    double translation_cm = 0.0;
    // Stand-in for the full-pose metric: Frobenius norm of the difference of
    // the two 4x4 homogeneous matrices (mixes radians-free rotation terms
    // with meters; kept isolated here so it can be swapped).
    double combined_l2 = 0.0;
};

PoseDeviation pose_deviation(const RigidPose& before, const RigidPose& after);

}  // namespace placekit
