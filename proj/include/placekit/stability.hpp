#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "placekit/geom.hpp"

namespace placekit {

// Ellipsoidal Gaussian fitted to an observed cloud: the CoM uncertainty model.
struct EllipsoidFit {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    Eigen::Vector3d semi_axes = Eigen::Vector3d::Ones();  // strictly positive
    Eigen::Matrix3d frame = Eigen::Matrix3d::Identity();  // orthonormal axes
};

struct ComHypothesisSet {
    std::vector<Eigen::Vector3d> samples;
    std::uint64_t seed = 0;

    std::size_t count() const { return samples.size(); }
};

struct StabilityParams {
    double logistic_steepness = 12.0;  // k > 0
    double logistic_center = 0.6;      // c in (0.5, 1.0)
    double contact_epsilon = 0.003;    // meters; band above the lowest point
    int num_hypotheses = 2000;         // N >= 100
    std::uint64_t seed = 0;            // CoM sampling seed

    // Per-axis Gaussian sigma = com_sigma_scale * semi-axis. The nominal
    // half-axis scale (0.5) spreads hypotheses so widely that tipping
    // thresholds bias ~0.17 of the footprint; 0.125 keeps the sweep
    // validation inside its tolerance while still modelling CoM uncertainty.
    double com_sigma_scale = 0.125;
    // Vertical semi-axis uses only points whose xy-distance to the mean is
    // within this fraction of the mean lateral extent.
    double vertical_proximity_ratio = 0.25;

    void validate() const;  // throws std::invalid_argument on violation
};

// Optional evaluation context: tilted gravity (for inclined supports) and a
// clip footprint restricting the support polygon (for table-edge studies).
// Both are expressed in the same frame as the posed cloud.
struct StabilityContext {
    Eigen::Vector3d gravity = Eigen::Vector3d(0, 0, -1);  // unit, z < 0
    std::optional<Polygon2D> support_footprint;
};

struct StabilityResult {
    Polygon2D support_polygon;  // empty when the support is degenerate
    ComHypothesisSet com_samples;
    double inlier_fraction = 0.0;  // p_in
    double score = 0.0;            // f_st
    bool degenerate_support = false;
};

// All points within epsilon of the lowest z value of the cloud (the cloud is
// expected to be in a frame whose z axis opposes gravity, support below).
std::vector<Eigen::Vector3d> extract_support_contacts(const PointCloud& cloud, double epsilon);

// Convex hull of the xy-projections of the contacts. Throws DegenerateSupport
// when fewer than 3 non-collinear projections exist.
Polygon2D support_polygon(const std::vector<Eigen::Vector3d>& contacts);

// Mean = average of all points. Lateral (x/y) semi-axes = half the bounding
// extents. Vertical semi-axis = half the z-extent of points near the mean in
// xy (radius = vertical_proximity_ratio * mean lateral extent); falls back to
// all points when none qualify (e.g. ring-shaped clouds).
EllipsoidFit fit_com_ellipsoid(const PointCloud& cloud, double vertical_proximity_ratio = 0.25);

ComHypothesisSet sample_com_hypotheses(const EllipsoidFit& fit, int n, std::uint64_t seed,
                                       double sigma_scale = 0.125);

// Slide each hypothesis along the gravity direction onto the horizontal plane
// z = plane_z. With gravity (0,0,-1) this is a plain vertical projection.
ComHypothesisSet project_hypotheses_along_gravity(const ComHypothesisSet& samples,
                                                  const Eigen::Vector3d& gravity,
                                                  double plane_z);

// Fraction of samples whose xy-projection lies inside the polygon.
double inlier_fraction(const ComHypothesisSet& samples, const Polygon2D& sp);

// Normalized logistic of the inlier fraction, clamped to [0,1]:
//   (sigma(k(p-c)) - sigma(k(0.5-c))) / (sigma(k(1-c)) - sigma(k(0.5-c)))
// so 0.5 maps to 0 and 1.0 maps to 1 exactly.
double stability_score(double p_in, const StabilityParams& params);

// End-to-end stability term: pose the cloud, extract contacts, build and
// optionally clip the support polygon, sample CoM hypotheses, project them
// along gravity, and score the inlier fraction. A degenerate or fully
// clipped-away support yields score 0 with an empty polygon marker.
StabilityResult evaluate_placement_stability(const PointCloud& object, const RigidPose& pose,
                                             const StabilityParams& params,
                                             const StabilityContext& context = {});

}  // namespace placekit
