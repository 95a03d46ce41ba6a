#include "placekit/placement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "placekit/rng.hpp"

namespace placekit {

const char* to_string(OrientationLabel label) {
    switch (label) {
        case OrientationLabel::observed: return "observed";
        case OrientationLabel::pitch_p90: return "+pitch90";
        case OrientationLabel::pitch_m90: return "-pitch90";
        case OrientationLabel::roll_p90: return "+roll90";
        case OrientationLabel::roll_m90: return "-roll90";
        case OrientationLabel::flip: return "flip";
    }
    return "unknown";
}

void PackingHeuristicParams::validate() const {
    if (collision_margin < 0.0) throw std::invalid_argument("collision margin must be >= 0");
    if (!(closeness_threshold > collision_margin)) {
        throw std::invalid_argument("closeness threshold must exceed the collision margin");
    }
    if (!(decay_rate > 0.0)) throw std::invalid_argument("decay rate must be > 0");
}

std::vector<PlacementCandidate> sample_placement_poses(const TargetRegion& region,
                                                       const ObjectModel& object, int n,
                                                       std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("placement sample count must be >= 1");
    if (region.support.empty()) throw EmptyGeometry("support mesh has no faces");
    if (object.cloud.points.empty()) throw EmptyGeometry("object cloud is empty");

    // Cumulative areas of upward-facing triangles for area-uniform sampling.
    std::vector<std::size_t> face_index;
    std::vector<double> cumulative;
    double total = 0.0;
    for (std::size_t i = 0; i < region.support.faces.size(); ++i) {
        const Triangle t = region.support.triangle(i);
        if (triangle_normal(t).z() <= 1e-6) continue;
        total += triangle_area(t);
        face_index.push_back(i);
        cumulative.push_back(total);
    }
    if (face_index.empty()) throw EmptyGeometry("support mesh has no upward-facing surface");

    Rng rng(seed);
    std::vector<PlacementCandidate> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        const double pick = rng.uniform() * total;
        const std::size_t slot =
            std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin();
        const Triangle t =
            region.support.triangle(face_index[std::min(slot, face_index.size() - 1)]);

        // Square-root barycentric mapping keeps the draw uniform over the
        // triangle's area.
        const double u = std::sqrt(rng.uniform());
        const double v = rng.uniform();
        const Eigen::Vector3d point = (1.0 - u) * t.a + u * (1.0 - v) * t.b + u * v * t.c;
        const double yaw = rng.uniform(0.0, 2.0 * M_PI);

        const Eigen::Vector3d normal = triangle_normal(t);
        const Eigen::Vector3d ref =
            std::abs(normal.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
        const Eigen::Vector3d tangent = ref.cross(normal).normalized();
        const Eigen::Vector3d bitangent = normal.cross(tangent);
        Eigen::Matrix3d base;
        base.col(0) = tangent;
        base.col(1) = bitangent;
        base.col(2) = normal;

        PlacementCandidate cand;
        cand.pose.rotation = base * Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).matrix();

        // Rest the object: lowest cloud point (along the normal) on the surface.
        double min_height = std::numeric_limits<double>::infinity();
        for (const auto& q : object.cloud.points) {
            min_height = std::min(min_height, normal.dot(cand.pose.rotation * q));
        }
        cand.pose.translation = point - min_height * normal;
        cand.orientation = OrientationLabel::observed;
        out.push_back(cand);
    }
    return out;
}

std::array<RigidPose, 6> orientation_set(const RigidPose& m) {
    const double half_pi = 0.5 * M_PI;
    const RigidPose variants[6] = {
        RigidPose::identity(),
        axis_angle_pose(Eigen::Vector3d::UnitX(), half_pi),
        axis_angle_pose(Eigen::Vector3d::UnitX(), -half_pi),
        axis_angle_pose(Eigen::Vector3d::UnitY(), half_pi),
        axis_angle_pose(Eigen::Vector3d::UnitY(), -half_pi),
        axis_angle_pose(Eigen::Vector3d::UnitX(), M_PI),
    };
    std::array<RigidPose, 6> out;
    for (int i = 0; i < 6; ++i) out[i] = m * variants[i];
    return out;
}

std::array<OrientationLabel, 6> orientation_labels() {
    return {OrientationLabel::observed,  OrientationLabel::pitch_p90,
            OrientationLabel::pitch_m90, OrientationLabel::roll_p90,
            OrientationLabel::roll_m90,  OrientationLabel::flip};
}

std::vector<PlacementCandidate> filter_colliding_placements(
    const std::vector<PlacementCandidate>& candidates, const TriMesh& object_hull,
    const TargetRegion& region, double margin, double support_allowance) {
    if (margin < 0.0) throw std::invalid_argument("collision margin must be >= 0");
    std::vector<PlacementCandidate> kept;
    kept.reserve(candidates.size());
    for (const auto& cand : candidates) {
        const TriMesh posed = transform_mesh(cand.pose, object_hull);
        if (!region.environment.empty() && meshes_collide(posed, region.environment, margin)) {
            continue;
        }
        bool hits_other = false;
        for (const auto& other : region.other_objects) {
            if (!other.empty() && meshes_collide(posed, other, margin)) {
                hits_other = true;
                break;
            }
        }
        if (hits_other) continue;

        // Resting contact is not a collision: test the support with the hull
        // lifted vertically, forgiving interpenetration up to the allowance
        // (the general margin does not apply here). The lift is along world z
        // so reoriented candidates measure penetration the same way.
        if (!region.support.empty()) {
            RigidPose lifted = cand.pose;
            lifted.translation.z() += support_allowance;
            if (meshes_collide(transform_mesh(lifted, object_hull), region.support, 0.0)) {
                continue;
            }
        }
        kept.push_back(cand);
    }
    return kept;
}

double nearest_object_clearance(const TriMesh& object_hull_at_pose, const TargetRegion& region) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& other : region.other_objects) {
        if (other.empty()) continue;
        best = std::min(best, mesh_min_distance(object_hull_at_pose, other));
    }
    return best;
}

double packing_heuristic(double distance, const PackingHeuristicParams& params) {
    params.validate();
    if (distance < params.collision_margin) return 0.0;
    const double tau = params.closeness_threshold;
    const double k = params.decay_rate;
    if (params.mode == PackingHeuristicParams::Mode::dense) {
        return distance <= tau ? 1.0 : std::exp(-k * (distance - tau));
    }
    return distance >= tau ? 1.0 : std::exp(-k * (tau - distance));
}

}  // namespace placekit
