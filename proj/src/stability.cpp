#include "placekit/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "placekit/rng.hpp"

namespace placekit {

void StabilityParams::validate() const {
    if (!(logistic_steepness > 0.0)) throw std::invalid_argument("logistic steepness must be > 0");
    if (!(logistic_center > 0.5 && logistic_center < 1.0)) {
        throw std::invalid_argument("logistic center must lie in (0.5, 1.0)");
    }
    if (!(contact_epsilon > 0.0)) throw std::invalid_argument("contact epsilon must be > 0");
    if (num_hypotheses < 100) throw std::invalid_argument("hypothesis count must be >= 100");
    if (!(com_sigma_scale > 0.0)) throw std::invalid_argument("CoM sigma scale must be > 0");
    if (!(vertical_proximity_ratio > 0.0)) {
        throw std::invalid_argument("vertical proximity ratio must be > 0");
    }
}

std::vector<Eigen::Vector3d> extract_support_contacts(const PointCloud& cloud, double epsilon) {
    if (cloud.points.empty()) throw EmptyGeometry("contact extraction on empty cloud");
    double z_min = cloud.points.front().z();
    for (const auto& p : cloud.points) z_min = std::min(z_min, p.z());
    std::vector<Eigen::Vector3d> contacts;
    for (const auto& p : cloud.points) {
        if (p.z() - z_min <= epsilon) contacts.push_back(p);
    }
    return contacts;
}

Polygon2D support_polygon(const std::vector<Eigen::Vector3d>& contacts) {
    std::vector<Eigen::Vector2d> xy;
    xy.reserve(contacts.size());
    for (const auto& c : contacts) xy.emplace_back(c.x(), c.y());
    try {
        return convex_hull_2d(xy);
    } catch (const DegenerateHull&) {
        throw DegenerateSupport(contacts.size());
    }
}

EllipsoidFit fit_com_ellipsoid(const PointCloud& cloud, double vertical_proximity_ratio) {
    if (cloud.points.size() < 10) throw InsufficientPoints("CoM fit requires >= 10 points");

    EllipsoidFit fit;
    fit.mean = Eigen::Vector3d::Zero();
    for (const auto& p : cloud.points) fit.mean += p;
    fit.mean /= static_cast<double>(cloud.points.size());

    Eigen::Vector3d lo = cloud.points.front();
    Eigen::Vector3d hi = cloud.points.front();
    for (const auto& p : cloud.points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double extent_x = hi.x() - lo.x();
    const double extent_y = hi.y() - lo.y();
    fit.semi_axes.x() = std::max(0.5 * extent_x, 1e-6);
    fit.semi_axes.y() = std::max(0.5 * extent_y, 1e-6);

    // Vertical extent from points near the mean in xy only; a ring-shaped
    // cloud may have no such points, in which case all points are used.
    const double radius = vertical_proximity_ratio * 0.5 * (extent_x + extent_y);
    double z_lo = std::numeric_limits<double>::infinity();
    double z_hi = -std::numeric_limits<double>::infinity();
    for (const auto& p : cloud.points) {
        if ((p.head<2>() - fit.mean.head<2>()).norm() <= radius) {
            z_lo = std::min(z_lo, p.z());
            z_hi = std::max(z_hi, p.z());
        }
    }
    if (!(z_hi >= z_lo)) {
        z_lo = lo.z();
        z_hi = hi.z();
    }
    fit.semi_axes.z() = std::max(0.5 * (z_hi - z_lo), 1e-6);
    fit.frame = Eigen::Matrix3d::Identity();
    return fit;
}

ComHypothesisSet sample_com_hypotheses(const EllipsoidFit& fit, int n, std::uint64_t seed,
                                       double sigma_scale) {
    if (n < 1) throw std::invalid_argument("hypothesis count must be >= 1");
    ComHypothesisSet set;
    set.seed = seed;
    set.samples.reserve(static_cast<std::size_t>(n));
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        Eigen::Vector3d local(sigma_scale * fit.semi_axes.x() * rng.normal(),
                              sigma_scale * fit.semi_axes.y() * rng.normal(),
                              sigma_scale * fit.semi_axes.z() * rng.normal());
        set.samples.push_back(fit.mean + fit.frame * local);
    }
    return set;
}

ComHypothesisSet project_hypotheses_along_gravity(const ComHypothesisSet& samples,
                                                  const Eigen::Vector3d& gravity,
                                                  double plane_z) {
    if (!(gravity.z() < 0.0)) throw GeometryError("gravity must point downward (z < 0)");
    ComHypothesisSet out;
    out.seed = samples.seed;
    out.samples.reserve(samples.samples.size());
    for (const auto& s : samples.samples) {
        const double t = (plane_z - s.z()) / gravity.z();
        out.samples.emplace_back(s.x() + t * gravity.x(), s.y() + t * gravity.y(), plane_z);
    }
    return out;
}

double inlier_fraction(const ComHypothesisSet& samples, const Polygon2D& sp) {
    if (samples.samples.empty()) throw EmptyGeometry("inlier fraction of empty hypothesis set");
    std::size_t inside = 0;
    for (const auto& s : samples.samples) {
        if (point_in_polygon(s.head<2>(), sp)) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(samples.samples.size());
}

double stability_score(double p_in, const StabilityParams& params) {
    auto sigmoid = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    const double k = params.logistic_steepness;
    const double c = params.logistic_center;
    const double floor_val = sigmoid(k * (0.5 - c));
    const double ceil_val = sigmoid(k * (1.0 - c));
    const double f = (sigmoid(k * (p_in - c)) - floor_val) / (ceil_val - floor_val);
    return std::clamp(f, 0.0, 1.0);
}

StabilityResult evaluate_placement_stability(const PointCloud& object, const RigidPose& pose,
                                             const StabilityParams& params,
                                             const StabilityContext& context) {
    params.validate();
    const PointCloud posed = transform_points(pose, object);
    const auto contacts = extract_support_contacts(posed, params.contact_epsilon);

    StabilityResult result;
    Polygon2D polygon;
    try {
        polygon = support_polygon(contacts);
    } catch (const DegenerateSupport&) {
        result.degenerate_support = true;  // knife-edge placement: scores 0
        return result;
    }
    if (context.support_footprint) {
        auto clipped = clip_convex(polygon, *context.support_footprint);
        if (!clipped) {
            result.degenerate_support = true;  // nothing left under the object
            return result;
        }
        polygon = std::move(*clipped);
    }

    double plane_z = posed.points.front().z();
    for (const auto& p : posed.points) plane_z = std::min(plane_z, p.z());

    const EllipsoidFit fit = fit_com_ellipsoid(posed, params.vertical_proximity_ratio);
    result.com_samples =
        sample_com_hypotheses(fit, params.num_hypotheses, params.seed, params.com_sigma_scale);
    const ComHypothesisSet projected =
        project_hypotheses_along_gravity(result.com_samples, context.gravity.normalized(),
                                         plane_z);
    result.support_polygon = std::move(polygon);
    result.inlier_fraction = inlier_fraction(projected, result.support_polygon);
    result.score = stability_score(result.inlier_fraction, params);
    return result;
}

}  // namespace placekit
