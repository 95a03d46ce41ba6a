#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "placekit/geom.hpp"

namespace placekit {

namespace {

struct HullFace {
    int a, b, c;
    Eigen::Vector3d normal;  // not normalized; magnitude = 2 * area
    double offset;           // plane: normal . x = offset
    bool alive = true;
};

HullFace make_face(const std::vector<Eigen::Vector3d>& pts, int a, int b, int c) {
    HullFace f{a, b, c, {}, 0.0, true};
    f.normal = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    f.offset = f.normal.dot(pts[a]);
    return f;
}

double signed_dist(const HullFace& f, const Eigen::Vector3d& p) {
    return f.normal.dot(p) - f.offset;  // scaled by 2*area; sign is what matters
}

}  // namespace

TriMesh convex_hull_3d(const std::vector<Eigen::Vector3d>& points) {
    const std::size_t n = points.size();
    if (n < 4) throw DegenerateHull(n);

    Eigen::Vector3d lo = points[0], hi = points[0];
    for (const auto& p : points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double scale = std::max(1.0, (hi - lo).norm());
    const double eps = 1e-9 * scale;

    // Initial simplex from extreme points: two far-apart points, the point
    // farthest from their line, then the point farthest from that plane.
    std::size_t i0 = 0, i1 = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (points[i].x() < points[i0].x()) i0 = i;
        if (points[i].x() > points[i1].x()) i1 = i;
    }
    if ((points[i1] - points[i0]).norm() <= eps) throw DegenerateHull(n);

    const Eigen::Vector3d dir = (points[i1] - points[i0]).normalized();
    std::size_t i2 = i0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d off = points[i] - points[i0];
        const double d = (off - off.dot(dir) * dir).norm();
        if (d > best) {
            best = d;
            i2 = i;
        }
    }
    if (best <= eps) throw DegenerateHull(n);  // all points collinear

    const Eigen::Vector3d plane_n =
        (points[i1] - points[i0]).cross(points[i2] - points[i0]).normalized();
    std::size_t i3 = i0;
    best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(plane_n.dot(points[i] - points[i0]));
        if (d > best) {
            best = d;
            i3 = i;
        }
    }
    if (best <= eps) throw DegenerateHull(n);  // all points coplanar

    int a = static_cast<int>(i0), b = static_cast<int>(i1), c = static_cast<int>(i2),
        d = static_cast<int>(i3);
    if (plane_n.dot(points[i3] - points[i0]) > 0.0) std::swap(b, c);  // keep d below (a,b,c)

    std::vector<HullFace> faces;
    faces.push_back(make_face(points, a, b, c));
    faces.push_back(make_face(points, a, d, b));
    faces.push_back(make_face(points, b, d, c));
    faces.push_back(make_face(points, c, d, a));

    for (std::size_t pi = 0; pi < n; ++pi) {
        const int p = static_cast<int>(pi);
        if (p == a || p == b || p == c || p == d) continue;

        // Faces that can see the point; eps scaled by face area because the
        // plane normal is unnormalized.
        std::vector<std::size_t> visible;
        for (std::size_t fi = 0; fi < faces.size(); ++fi) {
            if (!faces[fi].alive) continue;
            if (signed_dist(faces[fi], points[pi]) > eps * faces[fi].normal.norm()) {
                visible.push_back(fi);
            }
        }
        if (visible.empty()) continue;

        // Horizon = directed edges of visible faces whose reverse edge does
        // not belong to a visible face.
        std::map<std::pair<int, int>, bool> visible_edges;
        for (std::size_t fi : visible) {
            const HullFace& f = faces[fi];
            visible_edges[{f.a, f.b}] = true;
            visible_edges[{f.b, f.c}] = true;
            visible_edges[{f.c, f.a}] = true;
        }
        for (std::size_t fi : visible) faces[fi].alive = false;
        for (const auto& [edge, unused] : visible_edges) {
            (void)unused;
            if (visible_edges.count({edge.second, edge.first})) continue;  // interior edge
            faces.push_back(make_face(points, edge.first, edge.second, p));
        }
    }

    // Compact surviving faces into a mesh with remapped vertex indices.
    std::vector<int> remap(n, -1);
    std::vector<Eigen::Vector3d> verts;
    std::vector<std::array<int, 3>> tris;
    for (const auto& f : faces) {
        if (!f.alive) continue;
        std::array<int, 3> tri{};
        const int idx[3] = {f.a, f.b, f.c};
        for (int k = 0; k < 3; ++k) {
            if (remap[idx[k]] < 0) {
                remap[idx[k]] = static_cast<int>(verts.size());
                verts.push_back(points[idx[k]]);
            }
            tri[k] = remap[idx[k]];
        }
        tris.push_back(tri);
    }
    return TriMesh::create(std::move(verts), std::move(tris));
}

double mesh_volume(const TriMesh& mesh) {
    double six_vol = 0.0;
    for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
        const Triangle t = mesh.triangle(i);
        six_vol += t.a.dot(t.b.cross(t.c));
    }
    return six_vol / 6.0;
}

}  // namespace placekit
