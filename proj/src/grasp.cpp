#include "placekit/grasp.hpp"

#include <cmath>
#include <stdexcept>

#include "placekit/rng.hpp"

namespace placekit {

void GripperModel::validate() const {
    if (palm_extents.minCoeff() <= 0.0 || finger_extents.minCoeff() <= 0.0) {
        throw std::invalid_argument("gripper box extents must be positive");
    }
    if (!(max_opening > 0.0)) throw std::invalid_argument("gripper opening must be positive");
}

ReachabilityPredicate workspace_box_predicate(const Eigen::Vector3d& lo,
                                              const Eigen::Vector3d& hi) {
    return [lo, hi](const RigidPose& pose) {
        const Eigen::Vector3d& t = pose.translation;
        return (t.array() >= lo.array()).all() && (t.array() <= hi.array()).all();
    };
}

std::vector<GraspCandidate> sample_antipodal_grasps(const PointCloud& cloud,
                                                    const GripperModel& gripper, int n,
                                                    std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("grasp sample count must be >= 1");
    gripper.validate();
    if (!cloud.has_normals()) throw MissingNormals();
    cloud.validate();

    std::vector<GraspCandidate> out;
    out.reserve(static_cast<std::size_t>(n));
    Rng rng(seed);
    const std::size_t max_attempts = static_cast<std::size_t>(n) * 400;
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < static_cast<std::size_t>(n);
         ++attempt) {
        const std::size_t i = rng.uniform_index(cloud.size());
        const std::size_t j = rng.uniform_index(cloud.size());
        // Roll of the approach axis about the closing axis, drawn every
        // attempt so the stream stays aligned whether or not the pair is kept.
        const double roll = rng.uniform(-M_PI / 3.0, M_PI / 3.0);
        if (i == j) continue;

        const Eigen::Vector3d& p1 = cloud.points[i];
        const Eigen::Vector3d& p2 = cloud.points[j];
        const Eigen::Vector3d& n1 = cloud.normals[i];
        const Eigen::Vector3d& n2 = cloud.normals[j];
        const double sep = (p2 - p1).norm();
        if (sep < 1e-4 || sep > gripper.max_opening) continue;

        const Eigen::Vector3d closing = (p2 - p1) / sep;
        // Outward normals must oppose the closing line: the surface at each
        // contact faces away from the other contact. A tight alignment bound
        // rejects shear-prone diagonal pairs.
        if (n1.dot(closing) > -0.95 || n2.dot(closing) < 0.95) continue;
        const double antipodality = std::max(0.0, -n1.dot(n2));
        if (antipodality < 0.1) continue;

        // Approach axis: start from the most upward direction orthogonal to
        // the closing axis, then roll about the closing axis.
        Eigen::Vector3d up = Eigen::Vector3d::UnitZ() -
                             Eigen::Vector3d::UnitZ().dot(closing) * closing;
        if (up.norm() < 1e-6) {
            up = Eigen::Vector3d::UnitX() - Eigen::Vector3d::UnitX().dot(closing) * closing;
        }
        up.normalize();
        const Eigen::Vector3d z_axis = Eigen::AngleAxisd(roll, closing) * up;
        const Eigen::Vector3d y_axis = z_axis.cross(closing).normalized();

        GraspCandidate g;
        g.pose.rotation.col(0) = closing;
        g.pose.rotation.col(1) = y_axis;
        g.pose.rotation.col(2) = z_axis;
        g.pose.translation = 0.5 * (p1 + p2);
        g.width = sep;
        // Damp quality as the required opening approaches the limit.
        const double slack =
            std::clamp((gripper.max_opening - sep) / (0.1 * gripper.max_opening), 0.0, 1.0);
        g.quality = antipodality * slack;
        out.push_back(g);
    }
    return out;
}

GraspCandidate transform_grasp(const GraspCandidate& g, const RigidPose& m_o,
                               const RigidPose& m_p) {
    GraspCandidate out = g;
    out.pose = m_p * m_o.inverse() * g.pose;
    return out;
}

int reachable(const ReachabilityPredicate& pred, const GraspCandidate& g) {
    return pred(g.pose) ? 1 : 0;
}

namespace {

// The three gripper boxes in the grasp frame: fingertip plane at z = 0, palm
// behind the fingers on +z.
std::array<std::pair<Eigen::Vector3d, Eigen::Vector3d>, 3> gripper_boxes(
    const GripperModel& gripper, double width) {
    const double finger_cx = 0.5 * width + 0.5 * gripper.finger_extents.x();
    const double finger_cz = 0.5 * gripper.finger_extents.z();
    const double palm_cz = gripper.finger_extents.z() + 0.5 * gripper.palm_extents.z();
    return {{{gripper.palm_extents, {0.0, 0.0, palm_cz}},
             {gripper.finger_extents, {finger_cx, 0.0, finger_cz}},
             {gripper.finger_extents, {-finger_cx, 0.0, finger_cz}}}};
}

}  // namespace

TriMesh gripper_mesh(const GripperModel& gripper, const RigidPose& pose, double width) {
    std::vector<TriMesh> parts;
    for (const auto& [extents, center] : gripper_boxes(gripper, width)) {
        RigidPose local;
        local.translation = center;
        parts.push_back(transform_mesh(pose * local, make_box_mesh(extents)));
    }
    return merge_meshes(parts);
}

bool gripper_collides(const GraspCandidate& g, const GripperModel& gripper, const TriMesh& env,
                      double margin) {
    if (env.empty()) throw EmptyGeometry("gripper collision test against empty environment");
    MeshBvh tree(env);
    return gripper_collides(g, gripper, tree, margin);
}

bool gripper_collides(const GraspCandidate& g, const GripperModel& gripper, const MeshBvh& env,
                      double margin) {
    if (env.triangle_count() == 0) {
        throw EmptyGeometry("gripper collision test against empty environment");
    }
    // Box faces as index triples over the 8 corners (corner bit 0 -> +x,
    // bit 1 -> +y, bit 2 -> +z); winding is irrelevant for distance queries.
    static constexpr int kFace[12][3] = {{0, 2, 6}, {0, 6, 4}, {1, 5, 7}, {1, 7, 3},
                                         {0, 4, 5}, {0, 5, 1}, {2, 3, 7}, {2, 7, 6},
                                         {0, 1, 3}, {0, 3, 2}, {4, 6, 7}, {4, 7, 5}};
    const double margin_sq = margin * margin;
    const Aabb env_box = env.bounds();

    const auto boxes = gripper_boxes(gripper, g.width);
    std::array<std::array<Eigen::Vector3d, 8>, 3> corners;
    Aabb body_box;
    for (int b = 0; b < 3; ++b) {
        const auto& [extents, center] = boxes[b];
        for (int i = 0; i < 8; ++i) {
            const Eigen::Vector3d local(center.x() + (i & 1 ? 0.5 : -0.5) * extents.x(),
                                        center.y() + (i & 2 ? 0.5 : -0.5) * extents.y(),
                                        center.z() + (i & 4 ? 0.5 : -0.5) * extents.z());
            corners[b][i] = g.pose.apply(local);
            body_box.grow(corners[b][i]);
        }
    }
    // AABB lower bounds let most non-colliding poses skip the exact
    // triangle-distance queries entirely.
    if (body_box.distance_sq(env_box) > margin_sq) return false;

    for (int b = 0; b < 3; ++b) {
        Aabb box;
        for (const auto& corner : corners[b]) box.grow(corner);
        if (box.distance_sq(env_box) > margin_sq) continue;
        for (const auto& f : kFace) {
            const Triangle tri{corners[b][f[0]], corners[b][f[1]], corners[b][f[2]]};
            if (env.triangle_distance(tri, margin) <= margin) return true;
        }
    }
    return false;
}

}  // namespace placekit
