#pragma once

#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "placekit/geom.hpp"

namespace placekit {

struct Aabb {
    Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector3d hi = Eigen::Vector3d::Constant(-std::numeric_limits<double>::infinity());

    void grow(const Eigen::Vector3d& p);
    void grow(const Triangle& t);
    void grow(const Aabb& b);
    Eigen::Vector3d center() const { return 0.5 * (lo + hi); }
    double distance_sq(const Aabb& other) const;
    double distance_sq(const Eigen::Vector3d& p) const;
    // Slab test; true iff the ray origin + t*dir hits the box for some
    // t in [0, tmax].
    bool ray_intersects(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                        double tmax) const;
};

// Static AABB tree over a triangle soup. Median split on the longest axis,
// small leaves; queries prune on box-box / box-point lower bounds.
class MeshBvh {
  public:
    explicit MeshBvh(const TriMesh& mesh);

    std::size_t triangle_count() const { return tris_.size(); }

    // Bounds of the whole tree; inverted (empty) when there are no triangles.
    Aabb bounds() const { return root_ < 0 ? Aabb{} : nodes_[root_].box; }

    // Minimum distance between the two triangle sets. When stop_below >= 0
    // the search may return any value <= stop_below as soon as one is found
    // (early exit for boolean collision queries).
    double distance(const MeshBvh& other, double stop_below = -1.0) const;

    // Minimum distance from one query triangle to this mesh.
    double triangle_distance(const Triangle& t, double stop_below = -1.0) const;

    double point_distance(const Eigen::Vector3d& p) const;

    // Smallest t in (t_eps, tmax] where the ray hits a triangle, or nullopt.
    std::optional<double> ray_first_hit(const Eigen::Vector3d& origin,
                                        const Eigen::Vector3d& dir, double tmax,
                                        double t_eps = 1e-9) const;

  private:
    struct Node {
        Aabb box;
        int left = -1;   // internal: child indices; leaf: left == -1
        int right = -1;
        int first = 0;   // leaf: range into tris_
        int count = 0;
    };

    int build(int first, int count);
    void distance_rec(int node, const MeshBvh& other, int other_node, double& best,
                      double stop_below) const;
    void triangle_distance_rec(int node, const Triangle& t, const Aabb& tbox, double& best,
                               double stop_below) const;

    std::vector<Triangle> tris_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

bool ray_triangle_intersect(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                            const Triangle& t, double& t_hit);

}  // namespace placekit
