// Generates the bundled demo scene: a tall box observed as a point cloud, a
// shelf (floor slab plus a low ceiling) and two single-grasp candidate files.
// The ceiling blocks upright placements for a top grasp but not for a side
// grasp, so switching between the two grasp files flips the best placement
// orientation.
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "placekit/geom.hpp"
#include "placekit/grasp.hpp"
#include "placekit/io.hpp"
#include "placekit/oracle.hpp"

using namespace placekit;

namespace {

TriMesh box_between(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
    RigidPose pose;
    pose.translation = 0.5 * (lo + hi);
    return transform_mesh(pose, make_box_mesh(hi - lo));
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "demo";

    // Object: 0.1 x 0.1 x 0.22 box resting on z = 0, sampled with normals.
    const SyntheticObject obj = make_uniform_box_object({0.1, 0.1, 0.22});
    save_point_cloud(dir + "/object.ply", sample_object_cloud(obj, 4000, 7));

    // Shelf: floor slab with its top face at z = 0 and a wide ceiling slab
    // 0.26 m above it. The ceiling overhangs the floor on every side, so a
    // gripper above the object cannot slip around its rim.
    save_mesh(dir + "/support.obj",
              box_between({-0.25, -0.2, -0.03}, {0.25, 0.2, 0.0}));
    save_mesh(dir + "/shelf.obj", box_between({-0.6, -0.6, 0.26}, {0.6, 0.6, 0.29}));

    // Top grasp: fingers closing across x, approach straight down onto the
    // top face. Side grasp: the same hand pitched onto the long face, TCP at
    // half height.
    GraspCandidate top;
    top.pose.translation = {0.0, 0.0, 0.22};
    top.width = 0.08;
    top.quality = 0.9;
    save_grasps(dir + "/grasps_top.txt", {top});

    GraspCandidate side;
    side.pose = axis_angle_pose(Eigen::Vector3d::UnitX(), EIGEN_PI / 2.0);
    side.pose.translation = {0.0, -0.05, 0.11};
    side.width = 0.08;
    side.quality = 0.9;
    save_grasps(dir + "/grasps_side.txt", {side});

    write_text(dir + "/demo.cfg",
               "# demo shelf scene defaults\n"
               "seed = 13\n"
               "n_placements = 6\n");

    std::cout << "demo assets written to " << dir << "/\n";
    return 0;
}
