#pragma once

#include "placekit/geom.hpp"

namespace placekit {

// The unit of reasoning: an observed object cloud, its convex hull mesh used
// for collision queries, and the pose at which it was observed. Cloud and
// hull are stored in the object's local frame; `pose` places them in the
// world (the observed/source pose m_o).
struct ObjectModel {
    PointCloud cloud;
    TriMesh hull;
    RigidPose pose;
};

// Builds the model from an observed cloud given in the world frame: the cloud
// is re-expressed in the local frame implied by `pose` and the hull derived.
inline ObjectModel make_object_model(const PointCloud& world_cloud, const RigidPose& pose) {
    ObjectModel model;
    model.pose = pose;
    model.cloud = transform_points(pose.inverse(), world_cloud);
    model.hull = convex_hull_3d(model.cloud.points);
    return model;
}

}  // namespace placekit
