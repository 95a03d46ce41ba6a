#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "placekit/errors.hpp"

namespace placekit {

// Proper rigid transform: rotation must stay orthonormal with det +1.
struct RigidPose {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    static RigidPose identity() { return {}; }

    RigidPose operator*(const RigidPose& rhs) const {
        return {rotation * rhs.rotation, rotation * rhs.translation + translation};
    }

    RigidPose inverse() const {
        Eigen::Matrix3d rt = rotation.transpose();
        return {rt, -(rt * translation)};
    }

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation * p + translation; }

    bool rotation_valid(double tol = 1e-9) const;
};

RigidPose axis_angle_pose(const Eigen::Vector3d& axis, double angle_rad);

struct PointCloud {
    std::vector<Eigen::Vector3d> points;
    std::vector<Eigen::Vector3d> normals;  // empty, or one unit normal per point

    bool has_normals() const { return !normals.empty(); }
    std::size_t size() const { return points.size(); }

    // Checks finiteness and, when normals are present, count match and unit
    // length within 1e-6. Throws GeometryError on violation.
    void validate() const;
};

struct Triangle {
    Eigen::Vector3d a, b, c;
};

struct TriMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;

    // Range-checks indices and drops zero-area faces.
    static TriMesh create(std::vector<Eigen::Vector3d> vertices,
                          std::vector<std::array<int, 3>> faces);

    bool empty() const { return faces.empty(); }
    Triangle triangle(std::size_t face_index) const;
};

// Convex, counter-clockwise, no repeated vertices. An empty vertex list is
// the "no polygon" marker used by degenerate-support results.
struct Polygon2D {
    std::vector<Eigen::Vector2d> vertices;

    bool empty() const { return vertices.empty(); }
    std::size_t size() const { return vertices.size(); }
};

// Convex hull of a 2D point set (monotone chain). Collinear boundary points
// are dropped; only extreme vertices are kept. Throws DegenerateHull when
// fewer than 3 non-collinear points remain.
Polygon2D convex_hull_2d(const std::vector<Eigen::Vector2d>& points);

// Inclusive containment test: boundary points (within 1e-9 m of an edge)
// count as inside.
bool point_in_polygon(const Eigen::Vector2d& p, const Polygon2D& poly);

double polygon_area(const Polygon2D& poly);
Eigen::Vector2d polygon_centroid(const Polygon2D& poly);

// Intersection of two convex polygons; nullopt when the overlap is empty or
// degenerate (area ~ 0).
std::optional<Polygon2D> clip_convex(const Polygon2D& subject, const Polygon2D& clip);

PointCloud transform_points(const RigidPose& pose, const PointCloud& cloud);
TriMesh transform_mesh(const RigidPose& pose, const TriMesh& mesh);

// Minimum distance between two triangle meshes, 0 if they intersect.
// Accelerated by an AABB tree; mesh_min_distance_brute is the all-pairs
// reference path and must agree within 1e-9.
double mesh_min_distance(const TriMesh& a, const TriMesh& b);
double mesh_min_distance_brute(const TriMesh& a, const TriMesh& b);

// True iff mesh_min_distance(a, b) <= margin (inclusive).
bool meshes_collide(const TriMesh& a, const TriMesh& b, double margin);

// Triangle primitives, exposed for reuse and for oracle-style tests.
double point_segment_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& s0,
                              const Eigen::Vector3d& s1);
double segment_segment_distance(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                                const Eigen::Vector3d& q0, const Eigen::Vector3d& q1);
double point_triangle_distance(const Eigen::Vector3d& p, const Triangle& t);
bool tri_tri_intersect(const Triangle& t0, const Triangle& t1);
double tri_tri_distance(const Triangle& t0, const Triangle& t1);

Eigen::Vector3d triangle_normal(const Triangle& t);  // unit, right-handed winding
double triangle_area(const Triangle& t);

// Convex hull of a 3D point set (incremental algorithm), outward winding.
// Throws DegenerateHull for fewer than 4 points or (near-)coplanar input.
TriMesh convex_hull_3d(const std::vector<Eigen::Vector3d>& points);

// Signed enclosed volume by the divergence theorem; positive for a closed
// outward-wound mesh.
double mesh_volume(const TriMesh& mesh);

// Axis-aligned box mesh centered at the origin, outward winding.
TriMesh make_box_mesh(const Eigen::Vector3d& extents);
TriMesh make_cylinder_mesh(double radius, double height, int segments = 48);
TriMesh merge_meshes(const std::vector<TriMesh>& meshes);
double mesh_surface_area(const TriMesh& mesh);

}  // namespace placekit
