#include "placekit/bvh.hpp"

#include <algorithm>
#include <cmath>

namespace placekit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kLeafSize = 4;
}  // namespace

void Aabb::grow(const Eigen::Vector3d& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
}

void Aabb::grow(const Triangle& t) {
    grow(t.a);
    grow(t.b);
    grow(t.c);
}

void Aabb::grow(const Aabb& b) {
    lo = lo.cwiseMin(b.lo);
    hi = hi.cwiseMax(b.hi);
}

double Aabb::distance_sq(const Aabb& other) const {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        double d = std::max({0.0, lo[i] - other.hi[i], other.lo[i] - hi[i]});
        s += d * d;
    }
    return s;
}

double Aabb::distance_sq(const Eigen::Vector3d& p) const {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        double d = std::max({0.0, lo[i] - p[i], p[i] - hi[i]});
        s += d * d;
    }
    return s;
}

bool Aabb::ray_intersects(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                          double tmax) const {
    double t0 = 0.0;
    double t1 = tmax;
    for (int i = 0; i < 3; ++i) {
        const double inv = 1.0 / dir[i];  // +-inf for axis-parallel rays is fine
        double ta = (lo[i] - origin[i]) * inv;
        double tb = (hi[i] - origin[i]) * inv;
        if (ta > tb) std::swap(ta, tb);
        // NaN (origin exactly on a slab plane, dir component 0) falls through
        // the comparisons and leaves t0/t1 unchanged -- conservative.
        if (ta > t0) t0 = ta;
        if (tb < t1) t1 = tb;
        if (t0 > t1) return false;
    }
    return true;
}

MeshBvh::MeshBvh(const TriMesh& mesh) {
    tris_.reserve(mesh.faces.size());
    for (std::size_t i = 0; i < mesh.faces.size(); ++i) tris_.push_back(mesh.triangle(i));
    if (!tris_.empty()) {
        nodes_.reserve(2 * tris_.size());
        root_ = build(0, static_cast<int>(tris_.size()));
    }
}

int MeshBvh::build(int first, int count) {
    Node node;
    for (int i = first; i < first + count; ++i) node.box.grow(tris_[i]);
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (count <= kLeafSize) {
        nodes_[index].first = first;
        nodes_[index].count = count;
        return index;
    }
    // Median split on the longest axis of the centroid bounds.
    Aabb cbox;
    for (int i = first; i < first + count; ++i) {
        cbox.grow((tris_[i].a + tris_[i].b + tris_[i].c) / 3.0);
    }
    const Eigen::Vector3d ext = cbox.hi - cbox.lo;
    int axis = 0;
    if (ext.y() > ext.x()) axis = 1;
    if (ext.z() > ext[axis]) axis = 2;
    const int mid = first + count / 2;
    std::nth_element(tris_.begin() + first, tris_.begin() + mid, tris_.begin() + first + count,
                     [axis](const Triangle& a, const Triangle& b) {
                         return a.a[axis] + a.b[axis] + a.c[axis] <
                                b.a[axis] + b.b[axis] + b.c[axis];
                     });
    const int left = build(first, mid - first);
    const int right = build(mid, first + count - mid);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
}

double MeshBvh::distance(const MeshBvh& other, double stop_below) const {
    if (root_ < 0 || other.root_ < 0) return kInf;
    double best = kInf;
    distance_rec(root_, other, other.root_, best, stop_below);
    return best;
}

void MeshBvh::distance_rec(int ni, const MeshBvh& other, int oi, double& best,
                           double stop_below) const {
    if (stop_below >= 0.0 && best <= stop_below) return;
    const Node& a = nodes_[ni];
    const Node& b = other.nodes_[oi];
    if (a.box.distance_sq(b.box) >= best * best) return;

    const bool a_leaf = a.left < 0;
    const bool b_leaf = b.left < 0;
    if (a_leaf && b_leaf) {
        for (int i = a.first; i < a.first + a.count; ++i) {
            for (int j = b.first; j < b.first + b.count; ++j) {
                best = std::min(best, tri_tri_distance(tris_[i], other.tris_[j]));
                if (stop_below >= 0.0 && best <= stop_below) return;
            }
        }
        return;
    }

    // Descend the non-leaf side with the larger box, nearest child first.
    const bool split_a =
        !a_leaf && (b_leaf || (a.box.hi - a.box.lo).squaredNorm() >=
                                  (b.box.hi - b.box.lo).squaredNorm());
    if (split_a) {
        const double dl = nodes_[a.left].box.distance_sq(b.box);
        const double dr = nodes_[a.right].box.distance_sq(b.box);
        const int near = dl <= dr ? a.left : a.right;
        const int far = dl <= dr ? a.right : a.left;
        distance_rec(near, other, oi, best, stop_below);
        distance_rec(far, other, oi, best, stop_below);
    } else {
        const double dl = a.box.distance_sq(other.nodes_[b.left].box);
        const double dr = a.box.distance_sq(other.nodes_[b.right].box);
        const int near = dl <= dr ? b.left : b.right;
        const int far = dl <= dr ? b.right : b.left;
        distance_rec(ni, other, near, best, stop_below);
        distance_rec(ni, other, far, best, stop_below);
    }
}

double MeshBvh::triangle_distance(const Triangle& t, double stop_below) const {
    if (root_ < 0) return kInf;
    Aabb tbox;
    tbox.grow(t);
    double best = kInf;
    triangle_distance_rec(root_, t, tbox, best, stop_below);
    return best;
}

void MeshBvh::triangle_distance_rec(int ni, const Triangle& t, const Aabb& tbox, double& best,
                                    double stop_below) const {
    if (stop_below >= 0.0 && best <= stop_below) return;
    const Node& a = nodes_[ni];
    if (a.box.distance_sq(tbox) >= best * best) return;
    if (a.left < 0) {
        for (int i = a.first; i < a.first + a.count; ++i) {
            best = std::min(best, tri_tri_distance(tris_[i], t));
            if (stop_below >= 0.0 && best <= stop_below) return;
        }
        return;
    }
    const double dl = nodes_[a.left].box.distance_sq(tbox);
    const double dr = nodes_[a.right].box.distance_sq(tbox);
    const int near = dl <= dr ? a.left : a.right;
    const int far = dl <= dr ? a.right : a.left;
    triangle_distance_rec(near, t, tbox, best, stop_below);
    triangle_distance_rec(far, t, tbox, best, stop_below);
}

double MeshBvh::point_distance(const Eigen::Vector3d& p) const {
    if (root_ < 0) return kInf;
    double best = kInf;
    // Iterative best-first walk with a small explicit stack.
    std::vector<int> stack{root_};
    while (!stack.empty()) {
        const int ni = stack.back();
        stack.pop_back();
        const Node& node = nodes_[ni];
        if (node.box.distance_sq(p) >= best * best) continue;
        if (node.left < 0) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                best = std::min(best, point_triangle_distance(p, tris_[i]));
            }
            continue;
        }
        const double dl = nodes_[node.left].box.distance_sq(p);
        const double dr = nodes_[node.right].box.distance_sq(p);
        if (dl <= dr) {  // push far first so the near child is visited first
            stack.push_back(node.right);
            stack.push_back(node.left);
        } else {
            stack.push_back(node.left);
            stack.push_back(node.right);
        }
    }
    return best;
}

std::optional<double> MeshBvh::ray_first_hit(const Eigen::Vector3d& origin,
                                             const Eigen::Vector3d& dir, double tmax,
                                             double t_eps) const {
    if (root_ < 0) return std::nullopt;
    double best = tmax;
    bool hit = false;
    std::vector<int> stack{root_};
    while (!stack.empty()) {
        const int ni = stack.back();
        stack.pop_back();
        const Node& node = nodes_[ni];
        if (!node.box.ray_intersects(origin, dir, best)) continue;
        if (node.left < 0) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                double t = 0.0;
                if (ray_triangle_intersect(origin, dir, tris_[i], t) && t > t_eps && t <= best) {
                    best = t;
                    hit = true;
                }
            }
            continue;
        }
        stack.push_back(node.left);
        stack.push_back(node.right);
    }
    if (!hit) return std::nullopt;
    return best;
}

bool ray_triangle_intersect(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                            const Triangle& t, double& t_hit) {
    const Eigen::Vector3d e1 = t.b - t.a;
    const Eigen::Vector3d e2 = t.c - t.a;
    const Eigen::Vector3d pvec = dir.cross(e2);
    const double det = e1.dot(pvec);
    if (std::abs(det) < 1e-14) return false;  // parallel or degenerate
    const double inv_det = 1.0 / det;
    const Eigen::Vector3d tvec = origin - t.a;
    const double u = tvec.dot(pvec) * inv_det;
    if (u < -1e-12 || u > 1.0 + 1e-12) return false;
    const Eigen::Vector3d qvec = tvec.cross(e1);
    const double v = dir.dot(qvec) * inv_det;
    if (v < -1e-12 || u + v > 1.0 + 1e-12) return false;
    t_hit = e2.dot(qvec) * inv_det;
    return true;
}

}  // namespace placekit
