#include "placekit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "placekit/bvh.hpp"
#include "placekit/format.hpp"
#include "placekit/rng.hpp"

namespace placekit {

namespace {

// Prism over a simple CCW polygon. `boundary` lists the outline in CCW
// order; `extra` holds additional interior/edge vertices the cap
// triangulation may reference (indices continue past the boundary). The cap
// triangles must be CCW viewed from +z.
TriMesh extrude_prism(const std::vector<Eigen::Vector2d>& boundary,
                      const std::vector<Eigen::Vector2d>& extra,
                      const std::vector<std::array<int, 3>>& cap_tris, double height) {
    std::vector<Eigen::Vector2d> flat = boundary;
    flat.insert(flat.end(), extra.begin(), extra.end());
    const int n = static_cast<int>(flat.size());

    std::vector<Eigen::Vector3d> v;
    v.reserve(2 * flat.size());
    for (const auto& p : flat) v.emplace_back(p.x(), p.y(), 0.0);
    for (const auto& p : flat) v.emplace_back(p.x(), p.y(), height);

    std::vector<std::array<int, 3>> f;
    for (const auto& t : cap_tris) {
        f.push_back({t[0], t[2], t[1]});                  // bottom, outward -z
        f.push_back({t[0] + n, t[1] + n, t[2] + n});      // top, outward +z
    }
    const int m = static_cast<int>(boundary.size());
    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        f.push_back({i, j, j + n});  // side wall, outward for CCW outlines
        f.push_back({i, j + n, i + n});
    }
    return TriMesh::create(std::move(v), std::move(f));
}

Polygon2D rectangle(double x0, double x1, double y0, double y1) {
    Polygon2D r;
    r.vertices = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    return r;
}

// Mean x of the surface of the box [-a,a] x [-b,b] x [0,h] under the density
// exp(lambda*x): the two x-normal faces weigh area*exp(+-lambda*a); every
// other face contributes the line integrals S = int exp(lambda x) dx and
// T = int x exp(lambda x) dx over [-a, a] times its per-unit-x extent.
double box_tilted_surface_mean_x(double a, double b, double h, double lambda) {
    if (std::abs(lambda) * a < 1e-12) return 0.0;
    const double face = 2.0 * b * h;      // each face normal to x
    const double rim = 4.0 * b + 2.0 * h;  // top + bottom + two y-normal faces
    const double ep = std::exp(lambda * a);
    const double em = std::exp(-lambda * a);
    const double s = (ep - em) / lambda;
    const double t = a * (ep + em) / lambda - s / lambda;
    const double weight = face * (ep + em) + rim * s;
    const double moment = a * face * (ep - em) + rim * t;
    return moment / weight;
}

// Smallest lambda whose tilted surface mean hits target_x (monotone).
double solve_density_tilt(double a, double b, double h, double target_x) {
    if (std::abs(target_x) < 1e-15) return 0.0;
    if (target_x < 0.0) return -solve_density_tilt(a, b, h, -target_x);
    double lo = 0.0;
    double hi = 1.0 / a;
    int guard = 0;
    while (box_tilted_surface_mean_x(a, b, h, hi) < target_x) {
        hi *= 2.0;
        if (++guard > 60) throw std::invalid_argument("CoM shift is not reachable on the box");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (box_tilted_surface_mean_x(a, b, h, mid) < target_x ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Linear interpolation of the first point where the score curve drops below
// 0.5. A curve that starts below 0.5 maps to the first abscissa; one that
// never drops maps to the last.
double half_crossing(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (ys.front() < 0.5) return xs.front();
    for (std::size_t i = 1; i < ys.size(); ++i) {
        if (ys[i] < 0.5) {
            const double t = (ys[i - 1] - 0.5) / (ys[i - 1] - ys[i]);
            return xs[i - 1] + t * (xs[i] - xs[i - 1]);
        }
    }
    return xs.back();
}

// Maximum x reached by the convex polygon along the horizontal line y = y0.
double polygon_max_x_at(const Polygon2D& poly, double y0) {
    double best = -std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector2d& p = poly.vertices[i];
        const Eigen::Vector2d& q = poly.vertices[(i + 1) % n];
        if (std::abs(p.y() - y0) < 1e-12) best = std::max(best, p.x());
        const double dy = q.y() - p.y();
        if (std::abs(dy) < 1e-15) continue;
        const double t = (y0 - p.y()) / dy;
        if (t >= 0.0 && t <= 1.0) best = std::max(best, p.x() + t * (q.x() - p.x()));
    }
    if (!std::isfinite(best)) {
        throw GeometryError("footprint does not span the requested tipping line");
    }
    return best;
}

}  // namespace

SyntheticObject make_uniform_box_object(const Eigen::Vector3d& extents) {
    if ((extents.array() <= 0.0).any()) {
        throw std::invalid_argument("box extents must be positive");
    }
    SyntheticObject obj;
    obj.mesh = transform_mesh(RigidPose{Eigen::Matrix3d::Identity(),
                                        {0.0, 0.0, 0.5 * extents.z()}},
                              make_box_mesh(extents));
    obj.true_com = {0.0, 0.0, 0.5 * extents.z()};
    const double a = 0.5 * extents.x();
    const double b = 0.5 * extents.y();
    obj.footprint = rectangle(-a, a, -b, b);
    obj.footprint_half_extents = {a, b};
    obj.label = "uniform_box";
    return obj;
}

SyntheticObject make_offset_box_object(const Eigen::Vector3d& extents, double com_shift_fraction) {
    if (std::abs(com_shift_fraction) >= 0.5) {
        throw std::invalid_argument("CoM shift must keep the CoM inside the box");
    }
    SyntheticObject obj = make_uniform_box_object(extents);
    obj.true_com.x() = com_shift_fraction * extents.x();
    obj.density_tilt = {solve_density_tilt(0.5 * extents.x(), 0.5 * extents.y(), extents.z(),
                                           obj.true_com.x()),
                        0.0, 0.0};
    obj.label = "offset_box";
    return obj;
}

SyntheticObject make_cylinder_object(double radius, double height, int segments) {
    SyntheticObject obj;
    obj.mesh = transform_mesh(RigidPose{Eigen::Matrix3d::Identity(), {0.0, 0.0, 0.5 * height}},
                              make_cylinder_mesh(radius, height, segments));
    obj.true_com = {0.0, 0.0, 0.5 * height};
    obj.footprint.vertices.reserve(segments);
    for (int i = 0; i < segments; ++i) {
        const double th = 2.0 * M_PI * i / segments;
        obj.footprint.vertices.emplace_back(radius * std::cos(th), radius * std::sin(th));
    }
    obj.footprint_half_extents = {radius, radius};
    obj.label = "cylinder";
    return obj;
}

SyntheticObject make_l_shape_object(const Eigen::Vector3d& extents, double arm_width) {
    const double a = 0.5 * extents.x();
    const double b = 0.5 * extents.y();
    const double h = extents.z();
    const double w = arm_width;
    if (w <= 0.0 || w >= extents.x() || w >= extents.y()) {
        throw std::invalid_argument("arm width must fit inside the footprint box");
    }

    // Outline, CCW: horizontal arm along the bottom, vertical arm at the
    // left; index 6 is the reflex-side helper vertex used by the caps.
    const std::vector<Eigen::Vector2d> outline = {
        {-a, -b}, {a, -b}, {a, -b + w}, {-a + w, -b + w}, {-a + w, b}, {-a, b}};
    const std::vector<Eigen::Vector2d> extra = {{-a, -b + w}};
    const std::vector<std::array<int, 3>> caps = {
        {0, 1, 2}, {0, 2, 6}, {6, 3, 4}, {6, 4, 5}};

    SyntheticObject obj;
    obj.mesh = extrude_prism(outline, extra, caps, h);

    // Volume centroid of the two disjoint arm boxes.
    const double v1 = extents.x() * w * h;               // horizontal arm
    const double v2 = w * (extents.y() - w) * h;         // vertical arm above it
    const Eigen::Vector3d c1(0.0, -b + 0.5 * w, 0.5 * h);
    const Eigen::Vector3d c2(-a + 0.5 * w, -b + w + 0.5 * (extents.y() - w), 0.5 * h);
    obj.true_com = (v1 * c1 + v2 * c2) / (v1 + v2);

    std::vector<Eigen::Vector2d> corners = outline;
    corners.push_back(extra.front());
    obj.footprint = convex_hull_2d(corners);
    obj.footprint_half_extents = {a, b};
    obj.label = "l_shape";
    return obj;
}

PointCloud sample_object_cloud(const SyntheticObject& obj, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("cloud sample count must be >= 1");
    if (obj.mesh.empty()) throw EmptyGeometry("synthetic object has no mesh");

    std::vector<double> cumulative;
    cumulative.reserve(obj.mesh.faces.size());
    double total = 0.0;
    for (std::size_t i = 0; i < obj.mesh.faces.size(); ++i) {
        total += triangle_area(obj.mesh.triangle(i));
        cumulative.push_back(total);
    }

    const bool tilted = obj.density_tilt.norm() > 1e-15;
    double sup = 0.0;
    if (tilted) {
        sup = -std::numeric_limits<double>::infinity();
        for (const auto& v : obj.mesh.vertices) sup = std::max(sup, obj.density_tilt.dot(v));
    }

    Rng rng(seed);
    PointCloud cloud;
    cloud.points.reserve(n);
    cloud.normals.reserve(n);
    long long guard = 1000LL * n + 1000;
    while (static_cast<int>(cloud.points.size()) < n) {
        if (--guard < 0) throw std::runtime_error("tilted surface sampling failed to converge");
        const double pick = rng.uniform() * total;
        const std::size_t face =
            std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin();
        const Triangle t = obj.mesh.triangle(std::min(face, obj.mesh.faces.size() - 1));
        const double u = std::sqrt(rng.uniform());
        const double v = rng.uniform();
        const Eigen::Vector3d p = (1.0 - u) * t.a + u * (1.0 - v) * t.b + u * v * t.c;
        if (tilted && rng.uniform() > std::exp(obj.density_tilt.dot(p) - sup)) continue;
        cloud.points.push_back(p);
        cloud.normals.push_back(triangle_normal(t));
    }
    return cloud;
}

bool quasi_static_stable(const SyntheticObject& obj, const RigidPose& pose,
                         const Polygon2D& support) {
    if (support.size() < 3) return false;
    const Eigen::Vector3d com = pose.apply(obj.true_com);
    return point_in_polygon({com.x(), com.y()}, support);
}

SweepResult edge_sweep(const SyntheticObject& obj, const PointCloud& cloud, int steps,
                       const StabilityParams& params) {
    if (steps < 10) throw std::invalid_argument("edge sweep requires at least 10 steps");
    const double a = obj.footprint_half_extents.x();
    const double span = 10.0 * (obj.footprint_half_extents.norm() + 1.0);

    SweepResult r;
    r.abscissa_label = "overhang_fraction";
    for (int i = 0; i < steps; ++i) {
        const double o = static_cast<double>(i) / (steps - 1);
        const double edge_x = a * (1.0 - 2.0 * o);
        StabilityContext ctx;
        ctx.support_footprint = rectangle(-span, edge_x, -span, span);
        const StabilityResult res =
            evaluate_placement_stability(cloud, RigidPose::identity(), params, ctx);
        r.abscissa.push_back(o);
        r.scores.push_back(res.score);
    }
    r.estimated_threshold = half_crossing(r.abscissa, r.scores);

    // Ground truth by bisecting the quasi-static predicate over the overhang.
    auto stable_at = [&](double o) {
        const double edge_x = a * (1.0 - 2.0 * o);
        const auto clipped = clip_convex(obj.footprint, rectangle(-span, edge_x, -span, span));
        return clipped && quasi_static_stable(obj, RigidPose::identity(), *clipped);
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (stable_at(mid) ? lo : hi) = mid;
    }
    r.oracle_threshold = 0.5 * (lo + hi);
    return r;
}

SweepResult incline_sweep(const SyntheticObject& obj, const PointCloud& cloud,
                          const std::vector<double>& angles_deg, const StabilityParams& params) {
    if (angles_deg.empty()) throw std::invalid_argument("incline sweep needs at least one angle");
    for (std::size_t i = 0; i < angles_deg.size(); ++i) {
        if (angles_deg[i] < 0.0 || angles_deg[i] > 60.0) {
            throw std::invalid_argument("incline angles must lie within [0, 60] degrees");
        }
        if (i > 0 && angles_deg[i] <= angles_deg[i - 1]) {
            throw std::invalid_argument("incline angles must be strictly increasing");
        }
    }

    SweepResult r;
    r.abscissa_label = "incline_angle_deg";
    for (double deg : angles_deg) {
        const double th = deg * M_PI / 180.0;
        StabilityContext ctx;
        ctx.gravity = {std::sin(th), 0.0, -std::cos(th)};  // tips toward +x
        const StabilityResult res =
            evaluate_placement_stability(cloud, RigidPose::identity(), params, ctx);
        r.abscissa.push_back(deg);
        r.scores.push_back(res.score);
    }
    r.estimated_threshold = half_crossing(r.abscissa, r.scores);

    // Tipping about the downhill footprint edge at the CoM's height.
    const double reach = polygon_max_x_at(obj.footprint, obj.true_com.y()) - obj.true_com.x();
    r.oracle_threshold = std::atan2(reach, obj.true_com.z()) * 180.0 / M_PI;
    return r;
}

std::string to_csv(const SweepResult& r) {
    std::string out = r.abscissa_label + ",stability_score\n";
    for (std::size_t i = 0; i < r.abscissa.size(); ++i) {
        out += sig9(r.abscissa[i]) + "," + sig9(r.scores[i]) + "\n";
    }
    out += "# estimated_threshold=" + sig9(r.estimated_threshold) +
           ",oracle_threshold=" + sig9(r.oracle_threshold) + "\n";
    return out;
}

PartialCloudResult synthesize_partial_cloud(const TriMesh& mesh,
                                            const std::vector<Eigen::Vector3d>& viewpoints,
                                            double noise_sigma, std::uint64_t seed,
                                            int target_samples) {
    if (viewpoints.empty()) throw std::invalid_argument("at least one viewpoint is required");
    if (noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");
    if (target_samples < 1) throw std::invalid_argument("sample budget must be >= 1");
    if (mesh.empty()) throw EmptyGeometry("cannot observe an empty mesh");

    std::vector<double> cumulative;
    cumulative.reserve(mesh.faces.size());
    double total = 0.0;
    for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
        total += triangle_area(mesh.triangle(i));
        cumulative.push_back(total);
    }

    const MeshBvh tree(mesh);
    Rng rng(seed);
    PartialCloudResult out;
    int kept = 0;
    for (int s = 0; s < target_samples; ++s) {
        const double pick = rng.uniform() * total;
        const std::size_t face =
            std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin();
        const Triangle t = mesh.triangle(std::min(face, mesh.faces.size() - 1));
        const double u = std::sqrt(rng.uniform());
        const double v = rng.uniform();
        const Eigen::Vector3d p = (1.0 - u) * t.a + u * (1.0 - v) * t.b + u * v * t.c;
        const Eigen::Vector3d n = triangle_normal(t);

        bool visible = false;
        for (const auto& vp : viewpoints) {
            const Eigen::Vector3d to_vp = vp - p;
            const double d = to_vp.norm();
            if (d < 1e-12 || n.dot(to_vp) <= 0.0) continue;  // behind the face
            const Eigen::Vector3d dir = -to_vp / d;          // from the eye to p
            const auto hit = tree.ray_first_hit(vp, dir, d * (1.0 + 1e-6));
            // The ray must reach p itself; an earlier hit means occlusion.
            if (!hit || *hit >= d * (1.0 - 1e-6) - 1e-9) {
                visible = true;
                break;
            }
        }
        if (!visible) continue;
        ++kept;
        out.cloud.points.push_back(p + rng.normal(0.0, noise_sigma) * n);
        out.cloud.normals.push_back(n);
    }
    out.coverage = static_cast<double>(kept) / target_samples;
    return out;
}

PoseDeviation pose_deviation(const RigidPose& before, const RigidPose& after) {
    PoseDeviation d;
    const Eigen::Matrix3d rel = after.rotation * before.rotation.transpose();
    const double c = std::clamp(0.5 * (rel.trace() - 1.0), -1.0, 1.0);
    d.rotation_deg = std::acos(c) * 180.0 / M_PI;
    d.translation_cm = (after.translation - before.translation).norm() * 100.0;

    Eigen::Matrix4d ha = Eigen::Matrix4d::Identity();
    Eigen::Matrix4d hb = Eigen::Matrix4d::Identity();
    ha.topLeftCorner<3, 3>() = before.rotation;
    ha.topRightCorner<3, 1>() = before.translation;
    hb.topLeftCorner<3, 3>() = after.rotation;
    hb.topRightCorner<3, 1>() = after.translation;
    d.combined_l2 = (ha - hb).norm();
    return d;
}

}  // namespace placekit
