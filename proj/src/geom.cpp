#include "placekit/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "placekit/bvh.hpp"

namespace placekit {

namespace {

constexpr double kCollinearEps = 1e-12;   // cross-product magnitude treated as collinear
constexpr double kBoundaryTol = 1e-9;     // meters; inclusive containment band
constexpr double kInf = std::numeric_limits<double>::infinity();

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double point_segment_distance_2d(const Eigen::Vector2d& p, const Eigen::Vector2d& s0,
                                 const Eigen::Vector2d& s1) {
    Eigen::Vector2d d = s1 - s0;
    double len2 = d.squaredNorm();
    if (len2 <= 0.0) return (p - s0).norm();
    double t = std::clamp((p - s0).dot(d) / len2, 0.0, 1.0);
    return (p - (s0 + t * d)).norm();
}

}  // namespace

bool RigidPose::rotation_valid(double tol) const {
    Eigen::Matrix3d err = rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
    return err.norm() <= tol && rotation.determinant() > 0.0;
}

RigidPose axis_angle_pose(const Eigen::Vector3d& axis, double angle_rad) {
    RigidPose pose;
    pose.rotation = Eigen::AngleAxisd(angle_rad, axis.normalized()).toRotationMatrix();
    return pose;
}

void PointCloud::validate() const {
    for (const auto& p : points) {
        if (!p.allFinite()) throw GeometryError("point cloud contains non-finite coordinates");
    }
    if (normals.empty()) return;
    if (normals.size() != points.size()) {
        throw GeometryError("normal count does not match point count");
    }
    for (const auto& n : normals) {
        if (!n.allFinite() || std::abs(n.norm() - 1.0) > 1e-6) {
            throw GeometryError("point cloud normal is not unit length");
        }
    }
}

TriMesh TriMesh::create(std::vector<Eigen::Vector3d> vertices,
                        std::vector<std::array<int, 3>> faces) {
    TriMesh mesh;
    mesh.vertices = std::move(vertices);
    const int n = static_cast<int>(mesh.vertices.size());
    mesh.faces.reserve(faces.size());
    for (const auto& f : faces) {
        for (int idx : f) {
            if (idx < 0 || idx >= n) throw ShapeError("face vertex index out of range");
        }
        Triangle t{mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]};
        if (triangle_area(t) <= 1e-14) continue;  // drop degenerate faces
        mesh.faces.push_back(f);
    }
    return mesh;
}

Triangle TriMesh::triangle(std::size_t face_index) const {
    const auto& f = faces[face_index];
    return {vertices[f[0]], vertices[f[1]], vertices[f[2]]};
}

Polygon2D convex_hull_2d(const std::vector<Eigen::Vector2d>& points) {
    std::vector<Eigen::Vector2d> pts = points;
    std::sort(pts.begin(), pts.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
                              return a.x() == b.x() && a.y() == b.y();
                          }),
              pts.end());
    if (pts.size() < 3) throw DegenerateHull(pts.size());

    // Monotone chain; the <= keeps only strict turns, so collinear boundary
    // points are dropped.
    std::vector<Eigen::Vector2d> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {  // lower hull
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p) <= kCollinearEps) --k;
        hull[k++] = p;
    }
    const std::size_t lower_size = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper hull
        while (k >= lower_size && cross2(hull[k - 2], hull[k - 1], *it) <= kCollinearEps) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);  // last point repeats the first

    // Merge any vertices closer than the boundary tolerance.
    std::vector<Eigen::Vector2d> cleaned;
    for (const auto& v : hull) {
        if (cleaned.empty() || (v - cleaned.back()).norm() > kBoundaryTol) cleaned.push_back(v);
    }
    if (cleaned.size() >= 2 && (cleaned.front() - cleaned.back()).norm() <= kBoundaryTol) {
        cleaned.pop_back();
    }
    if (cleaned.size() < 3) throw DegenerateHull(pts.size());
    return Polygon2D{std::move(cleaned)};
}

bool point_in_polygon(const Eigen::Vector2d& p, const Polygon2D& poly) {
    const auto& v = poly.vertices;
    if (v.empty()) return false;
    if (v.size() == 1) return (p - v[0]).norm() <= kBoundaryTol;
    if (v.size() == 2) return point_segment_distance_2d(p, v[0], v[1]) <= kBoundaryTol;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Eigen::Vector2d& a = v[i];
        const Eigen::Vector2d& b = v[(i + 1) % v.size()];
        double len = (b - a).norm();
        if (len <= 0.0) continue;
        // Signed distance to the CCW edge line; negative means outside.
        if (cross2(a, b, p) / len < -kBoundaryTol) return false;
    }
    return true;
}

double polygon_area(const Polygon2D& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        twice += a.x() * b.y() - b.x() * a.y();
    }
    return 0.5 * twice;
}

Eigen::Vector2d polygon_centroid(const Polygon2D& poly) {
    const auto& v = poly.vertices;
    if (v.empty()) throw EmptyGeometry("centroid of empty polygon");
    double area = polygon_area(poly);
    if (std::abs(area) < 1e-15) {  // degenerate: fall back to vertex mean
        Eigen::Vector2d mean = Eigen::Vector2d::Zero();
        for (const auto& p : v) mean += p;
        return mean / static_cast<double>(v.size());
    }
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        double w = a.x() * b.y() - b.x() * a.y();
        c += w * (a + b);
    }
    return c / (6.0 * area);
}

std::optional<Polygon2D> clip_convex(const Polygon2D& subject, const Polygon2D& clip) {
    if (subject.size() < 3 || clip.size() < 3) return std::nullopt;
    std::vector<Eigen::Vector2d> poly = subject.vertices;
    for (std::size_t i = 0; i < clip.size() && !poly.empty(); ++i) {
        const Eigen::Vector2d& a = clip.vertices[i];
        const Eigen::Vector2d& b = clip.vertices[(i + 1) % clip.size()];
        std::vector<Eigen::Vector2d> kept;
        kept.reserve(poly.size() + 1);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            const Eigen::Vector2d& p = poly[j];
            const Eigen::Vector2d& q = poly[(j + 1) % poly.size()];
            double dp = cross2(a, b, p);
            double dq = cross2(a, b, q);
            if (dp >= 0.0) kept.push_back(p);
            if ((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0)) {
                kept.push_back(p + (dp / (dp - dq)) * (q - p));
            }
        }
        poly = std::move(kept);
    }
    if (poly.size() < 3) return std::nullopt;
    try {
        Polygon2D out = convex_hull_2d(poly);  // re-hull to restore invariants
        if (polygon_area(out) < 1e-16) return std::nullopt;
        return out;
    } catch (const DegenerateHull&) {
        return std::nullopt;
    }
}

PointCloud transform_points(const RigidPose& pose, const PointCloud& cloud) {
    PointCloud out;
    out.points.reserve(cloud.points.size());
    for (const auto& p : cloud.points) out.points.push_back(pose.apply(p));
    out.normals.reserve(cloud.normals.size());
    for (const auto& n : cloud.normals) out.normals.push_back(pose.rotation * n);
    return out;
}

TriMesh transform_mesh(const RigidPose& pose, const TriMesh& mesh) {
    TriMesh out;
    out.vertices.reserve(mesh.vertices.size());
    for (const auto& v : mesh.vertices) out.vertices.push_back(pose.apply(v));
    out.faces = mesh.faces;
    return out;
}

double point_segment_distance(const Eigen::Vector3d& p, const Eigen::Vector3d& s0,
                              const Eigen::Vector3d& s1) {
    Eigen::Vector3d d = s1 - s0;
    double len2 = d.squaredNorm();
    if (len2 <= 0.0) return (p - s0).norm();
    double t = std::clamp((p - s0).dot(d) / len2, 0.0, 1.0);
    return (p - (s0 + t * d)).norm();
}

double segment_segment_distance(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                                const Eigen::Vector3d& q0, const Eigen::Vector3d& q1) {
    const Eigen::Vector3d d1 = p1 - p0;
    const Eigen::Vector3d d2 = q1 - q0;
    const Eigen::Vector3d r = p0 - q0;
    const double a = d1.squaredNorm();
    const double e = d2.squaredNorm();
    const double f = d2.dot(r);
    double s = 0.0;
    double t = 0.0;
    if (a <= 1e-30 && e <= 1e-30) {
        return r.norm();
    } else if (a <= 1e-30) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = d1.dot(r);
        if (e <= 1e-30) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return ((p0 + s * d1) - (q0 + t * d2)).norm();
}

double point_triangle_distance(const Eigen::Vector3d& p, const Triangle& t) {
    const Eigen::Vector3d ab = t.b - t.a;
    const Eigen::Vector3d ac = t.c - t.a;
    const Eigen::Vector3d ap = p - t.a;
    const double d1 = ab.dot(ap);
    const double d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return (p - t.a).norm();

    const Eigen::Vector3d bp = p - t.b;
    const double d3 = ab.dot(bp);
    const double d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return (p - t.b).norm();

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return (p - (t.a + v * ab)).norm();
    }

    const Eigen::Vector3d cp = p - t.c;
    const double d5 = ab.dot(cp);
    const double d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return (p - t.c).norm();

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return (p - (t.a + w * ac)).norm();
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (p - (t.b + w * (t.c - t.b))).norm();
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom;
    const double w = vc * denom;
    return (p - (t.a + ab * v + ac * w)).norm();
}

namespace {

// 2D helpers for the coplanar branch of the triangle intersection test.
bool on_segment_2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& p) {
    return p.x() >= std::min(a.x(), b.x()) - 1e-15 && p.x() <= std::max(a.x(), b.x()) + 1e-15 &&
           p.y() >= std::min(a.y(), b.y()) - 1e-15 && p.y() <= std::max(a.y(), b.y()) + 1e-15;
}

bool segments_intersect_2d(const Eigen::Vector2d& a0, const Eigen::Vector2d& a1,
                           const Eigen::Vector2d& b0, const Eigen::Vector2d& b1) {
    const double d1 = cross2(a0, a1, b0);
    const double d2 = cross2(a0, a1, b1);
    const double d3 = cross2(b0, b1, a0);
    const double d4 = cross2(b0, b1, a1);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    if (d1 == 0 && on_segment_2d(a0, a1, b0)) return true;
    if (d2 == 0 && on_segment_2d(a0, a1, b1)) return true;
    if (d3 == 0 && on_segment_2d(b0, b1, a0)) return true;
    if (d4 == 0 && on_segment_2d(b0, b1, a1)) return true;
    return false;
}

bool point_in_triangle_2d(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                          const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    const double d1 = cross2(a, b, p);
    const double d2 = cross2(b, c, p);
    const double d3 = cross2(c, a, p);
    const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
    const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(has_neg && has_pos);
}

bool coplanar_tri_tri(const Eigen::Vector3d& n, const Triangle& t0, const Triangle& t1) {
    // Project onto the plane's dominant-axis coordinate pair.
    int drop = 0;
    double amax = std::abs(n.x());
    if (std::abs(n.y()) > amax) { drop = 1; amax = std::abs(n.y()); }
    if (std::abs(n.z()) > amax) drop = 2;
    const int i0 = drop == 0 ? 1 : 0;
    const int i1 = drop == 2 ? 1 : 2;
    auto proj = [&](const Eigen::Vector3d& v) { return Eigen::Vector2d(v[i0], v[i1]); };
    const Eigen::Vector2d a0 = proj(t0.a), a1 = proj(t0.b), a2 = proj(t0.c);
    const Eigen::Vector2d b0 = proj(t1.a), b1 = proj(t1.b), b2 = proj(t1.c);

    const Eigen::Vector2d ea[3][2] = {{a0, a1}, {a1, a2}, {a2, a0}};
    const Eigen::Vector2d eb[3][2] = {{b0, b1}, {b1, b2}, {b2, b0}};
    for (const auto& sa : ea) {
        for (const auto& sb : eb) {
            if (segments_intersect_2d(sa[0], sa[1], sb[0], sb[1])) return true;
        }
    }
    if (point_in_triangle_2d(a0, b0, b1, b2)) return true;
    if (point_in_triangle_2d(b0, a0, a1, a2)) return true;
    return false;
}

// Interval of the triangle's intersection with a plane, parameterised along
// the shared line. (p*, d*) are per-vertex line projections and signed plane
// distances. Returns false when the triangle lies in the plane.
bool plane_crossing_interval(double p0, double p1, double p2, double d0, double d1, double d2,
                             double& t0, double& t1) {
    auto cross_param = [](double pa, double pb, double da, double db) {
        return pa + (pb - pa) * (da / (da - db));
    };
    if (d0 * d1 > 0.0) {
        t0 = cross_param(p0, p2, d0, d2);
        t1 = cross_param(p1, p2, d1, d2);
    } else if (d0 * d2 > 0.0) {
        t0 = cross_param(p0, p1, d0, d1);
        t1 = cross_param(p2, p1, d2, d1);
    } else if (d1 * d2 > 0.0 || d0 != 0.0) {
        t0 = cross_param(p1, p0, d1, d0);
        t1 = cross_param(p2, p0, d2, d0);
    } else if (d1 != 0.0) {
        t0 = cross_param(p0, p1, d0, d1);
        t1 = cross_param(p2, p1, d2, d1);
    } else if (d2 != 0.0) {
        t0 = cross_param(p0, p2, d0, d2);
        t1 = cross_param(p1, p2, d1, d2);
    } else {
        return false;
    }
    if (t0 > t1) std::swap(t0, t1);
    return true;
}

}  // namespace

bool tri_tri_intersect(const Triangle& t0, const Triangle& t1) {
    constexpr double kPlaneEps = 1e-12;  // meters; snap near-coplanar vertices onto the plane

    Eigen::Vector3d n1 = (t1.b - t1.a).cross(t1.c - t1.a);
    double n1len = n1.norm();
    if (n1len <= 0.0) return false;  // degenerate triangle
    n1 /= n1len;
    double du0 = n1.dot(t0.a - t1.a);
    double du1 = n1.dot(t0.b - t1.a);
    double du2 = n1.dot(t0.c - t1.a);
    if (std::abs(du0) < kPlaneEps) du0 = 0.0;
    if (std::abs(du1) < kPlaneEps) du1 = 0.0;
    if (std::abs(du2) < kPlaneEps) du2 = 0.0;
    if ((du0 > 0 && du1 > 0 && du2 > 0) || (du0 < 0 && du1 < 0 && du2 < 0)) return false;

    Eigen::Vector3d n0 = (t0.b - t0.a).cross(t0.c - t0.a);
    double n0len = n0.norm();
    if (n0len <= 0.0) return false;
    n0 /= n0len;
    double dv0 = n0.dot(t1.a - t0.a);
    double dv1 = n0.dot(t1.b - t0.a);
    double dv2 = n0.dot(t1.c - t0.a);
    if (std::abs(dv0) < kPlaneEps) dv0 = 0.0;
    if (std::abs(dv1) < kPlaneEps) dv1 = 0.0;
    if (std::abs(dv2) < kPlaneEps) dv2 = 0.0;
    if ((dv0 > 0 && dv1 > 0 && dv2 > 0) || (dv0 < 0 && dv1 < 0 && dv2 < 0)) return false;

    if (du0 == 0 && du1 == 0 && du2 == 0) return coplanar_tri_tri(n1, t0, t1);

    // Project both triangles onto the dominant axis of the plane-intersection
    // line and compare crossing intervals.
    const Eigen::Vector3d line_dir = n0.cross(n1);
    int axis = 0;
    double amax = std::abs(line_dir.x());
    if (std::abs(line_dir.y()) > amax) { axis = 1; amax = std::abs(line_dir.y()); }
    if (std::abs(line_dir.z()) > amax) axis = 2;

    double a0, a1, b0, b1;
    if (!plane_crossing_interval(t0.a[axis], t0.b[axis], t0.c[axis], du0, du1, du2, a0, a1)) {
        return coplanar_tri_tri(n1, t0, t1);
    }
    if (!plane_crossing_interval(t1.a[axis], t1.b[axis], t1.c[axis], dv0, dv1, dv2, b0, b1)) {
        return coplanar_tri_tri(n1, t0, t1);
    }
    return a1 >= b0 && b1 >= a0;  // inclusive: touching counts
}

double tri_tri_distance(const Triangle& t0, const Triangle& t1) {
    if (tri_tri_intersect(t0, t1)) return 0.0;

    const Eigen::Vector3d e0[3][2] = {{t0.a, t0.b}, {t0.b, t0.c}, {t0.c, t0.a}};
    const Eigen::Vector3d e1[3][2] = {{t1.a, t1.b}, {t1.b, t1.c}, {t1.c, t1.a}};
    double best = kInf;
    for (const auto& sa : e0) {
        for (const auto& sb : e1) {
            best = std::min(best, segment_segment_distance(sa[0], sa[1], sb[0], sb[1]));
        }
    }
    for (const auto& v : {t0.a, t0.b, t0.c}) best = std::min(best, point_triangle_distance(v, t1));
    for (const auto& v : {t1.a, t1.b, t1.c}) best = std::min(best, point_triangle_distance(v, t0));
    return best;
}

Eigen::Vector3d triangle_normal(const Triangle& t) {
    Eigen::Vector3d n = (t.b - t.a).cross(t.c - t.a);
    double len = n.norm();
    if (len <= 0.0) throw GeometryError("normal of degenerate triangle");
    return n / len;
}

double triangle_area(const Triangle& t) {
    return 0.5 * (t.b - t.a).cross(t.c - t.a).norm();
}

double mesh_min_distance(const TriMesh& a, const TriMesh& b) {
    if (a.empty() || b.empty()) throw EmptyGeometry("mesh distance requires non-empty meshes");
    MeshBvh ta(a);
    MeshBvh tb(b);
    return ta.distance(tb);
}

double mesh_min_distance_brute(const TriMesh& a, const TriMesh& b) {
    if (a.empty() || b.empty()) throw EmptyGeometry("mesh distance requires non-empty meshes");
    double best = kInf;
    for (std::size_t i = 0; i < a.faces.size(); ++i) {
        const Triangle ti = a.triangle(i);
        for (std::size_t j = 0; j < b.faces.size(); ++j) {
            best = std::min(best, tri_tri_distance(ti, b.triangle(j)));
            if (best == 0.0) return 0.0;
        }
    }
    return best;
}

bool meshes_collide(const TriMesh& a, const TriMesh& b, double margin) {
    if (a.empty() || b.empty()) throw EmptyGeometry("collision test requires non-empty meshes");
    MeshBvh ta(a);
    MeshBvh tb(b);
    return ta.distance(tb, margin) <= margin;
}

TriMesh make_box_mesh(const Eigen::Vector3d& extents) {
    if (extents.minCoeff() <= 0.0) throw ShapeError("box extents must be positive");
    const Eigen::Vector3d h = 0.5 * extents;
    std::vector<Eigen::Vector3d> v = {
        {-h.x(), -h.y(), -h.z()}, {h.x(), -h.y(), -h.z()},
        {h.x(), h.y(), -h.z()},   {-h.x(), h.y(), -h.z()},
        {-h.x(), -h.y(), h.z()},  {h.x(), -h.y(), h.z()},
        {h.x(), h.y(), h.z()},    {-h.x(), h.y(), h.z()},
    };
    std::vector<std::array<int, 3>> f = {
        {0, 2, 1}, {0, 3, 2},  // bottom (-z)
        {4, 5, 6}, {4, 6, 7},  // top (+z)
        {0, 1, 5}, {0, 5, 4},  // front (-y)
        {2, 3, 7}, {2, 7, 6},  // back (+y)
        {0, 4, 7}, {0, 7, 3},  // left (-x)
        {1, 2, 6}, {1, 6, 5},  // right (+x)
    };
    return TriMesh::create(std::move(v), std::move(f));
}

TriMesh make_cylinder_mesh(double radius, double height, int segments) {
    if (radius <= 0.0 || height <= 0.0 || segments < 3) {
        throw ShapeError("cylinder requires positive radius/height and >= 3 segments");
    }
    std::vector<Eigen::Vector3d> v;
    v.reserve(2 * segments + 2);
    const double hz = 0.5 * height;
    for (int i = 0; i < segments; ++i) {
        double th = 2.0 * M_PI * i / segments;
        v.emplace_back(radius * std::cos(th), radius * std::sin(th), -hz);
    }
    for (int i = 0; i < segments; ++i) {
        double th = 2.0 * M_PI * i / segments;
        v.emplace_back(radius * std::cos(th), radius * std::sin(th), hz);
    }
    const int cb = 2 * segments;      // bottom center
    const int ct = 2 * segments + 1;  // top center
    v.emplace_back(0.0, 0.0, -hz);
    v.emplace_back(0.0, 0.0, hz);

    std::vector<std::array<int, 3>> f;
    f.reserve(4 * segments);
    for (int i = 0; i < segments; ++i) {
        int j = (i + 1) % segments;
        f.push_back({i, j, segments + j});           // side, lower tri
        f.push_back({i, segments + j, segments + i});  // side, upper tri
        f.push_back({cb, j, i});                     // bottom cap (-z)
        f.push_back({ct, segments + i, segments + j});  // top cap (+z)
    }
    return TriMesh::create(std::move(v), std::move(f));
}

TriMesh merge_meshes(const std::vector<TriMesh>& meshes) {
    TriMesh out;
    for (const auto& m : meshes) {
        const int base = static_cast<int>(out.vertices.size());
        out.vertices.insert(out.vertices.end(), m.vertices.begin(), m.vertices.end());
        for (const auto& face : m.faces) {
            out.faces.push_back({face[0] + base, face[1] + base, face[2] + base});
        }
    }
    return out;
}

double mesh_surface_area(const TriMesh& mesh) {
    double area = 0.0;
    for (std::size_t i = 0; i < mesh.faces.size(); ++i) area += triangle_area(mesh.triangle(i));
    return area;
}

}  // namespace placekit
