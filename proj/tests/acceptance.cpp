// Acceptance gate: one check per release criterion, each printed as a single
// pass/fail line with its runtime. The binary exits nonzero when any
// criterion fails, so it can anchor CI.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "placekit/geom.hpp"
#include "placekit/oracle.hpp"
#include "placekit/pipeline.hpp"
#include "placekit/placement.hpp"
#include "placekit/scoring.hpp"
#include "placekit/stability.hpp"

using namespace placekit;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string run_cli(const std::string& args) {
    const std::string cmd = std::string(PLACEKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {};
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    return out;
}

std::string demo_args(const std::string& grasp_file) {
    const std::string demo = PLACEKIT_DEMO_DIR;
    return "unify --object " + demo + "/object.ply --support " + demo +
           "/support.obj --environment " + demo + "/shelf.obj --grasps " + demo + "/" +
           grasp_file + " --config " + demo + "/demo.cfg";
}

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// --- 1: exact score endpoints ------------------------------------------------

Outcome criterion_endpoints() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> draw_k(1.0, 50.0);
    std::uniform_real_distribution<double> draw_c(0.500001, 0.999999);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        StabilityParams p;
        p.logistic_steepness = draw_k(rng);
        p.logistic_center = draw_c(rng);
        worst = std::max(worst, std::abs(stability_score(0.5, p)));
        worst = std::max(worst, std::abs(stability_score(1.0, p) - 1.0));
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 1e-12 && elapsed < 1.0,
            fmt("max endpoint error %.3g (limit 1e-12) over 100 random (k, c), %.3f s (limit 1 s)",
                worst, elapsed)};
}

// --- 2: edge-overhang tipping thresholds -------------------------------------

Outcome criterion_edge_thresholds() {
    const auto t0 = Clock::now();
    const Eigen::Vector3d extents(0.1, 0.1, 0.08);
    std::vector<double> err_uniform, err_heavy, err_light;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        StabilityParams params;
        params.seed = 100 + seed;
        const auto sweep = [&](const SyntheticObject& obj) {
            const PointCloud cloud = sample_object_cloud(obj, 12000, seed);
            return edge_sweep(obj, cloud, 41, params).estimated_threshold;
        };
        err_uniform.push_back(std::abs(sweep(make_uniform_box_object(extents)) - 0.50));
        err_heavy.push_back(std::abs(sweep(make_offset_box_object(extents, 0.25)) - 0.25));
        err_light.push_back(std::abs(sweep(make_offset_box_object(extents, -0.25)) - 0.75));
    }
    const double mu = median(err_uniform), mh = median(err_heavy), ml = median(err_light);
    const double elapsed = seconds_since(t0);
    const bool pass = mu <= 0.05 && mh <= 0.05 && ml <= 0.05 && elapsed < 30.0;
    return {pass,
            fmt("median |crossing-analytic| uniform %.4f, heavy side %.4f, light side %.4f "
                "(limit 0.05 each, 20 seeds), %.1f s (limit 30 s)",
                mu, mh, ml, elapsed)};
}

// --- 3: inclination tipping angles -------------------------------------------

Outcome criterion_incline_thresholds() {
    const auto t0 = Clock::now();
    std::vector<double> angles;
    for (int a = 0; a <= 60; ++a) angles.push_back(double(a));
    const auto median_err = [&](const Eigen::Vector3d& extents, double analytic_deg) {
        const SyntheticObject obj = make_uniform_box_object(extents);
        std::vector<double> errs;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            StabilityParams params;
            params.seed = 300 + seed;
            const PointCloud cloud = sample_object_cloud(obj, 12000, seed);
            const SweepResult r = incline_sweep(obj, cloud, angles, params);
            errs.push_back(std::abs(r.estimated_threshold - analytic_deg));
        }
        return median(errs);
    };
    const double tall = median_err({0.1, 0.1, 0.2}, 26.5650512);  // atan(0.05 / 0.10)
    const double cube = median_err({0.1, 0.1, 0.1}, 45.0);        // atan(0.05 / 0.05)
    const double elapsed = seconds_since(t0);
    return {tall <= 3.0 && cube <= 3.0 && elapsed < 30.0,
            fmt("median |crossing-analytic| at 26.57deg: %.2fdeg, at 45deg: %.2fdeg "
                "(limit 3deg, 5 seeds), %.1f s (limit 30 s)",
                tall, cube, elapsed)};
}

// --- 4: multi-view coverage shrinks the edge-threshold error ------------------

Outcome criterion_coverage_monotonicity() {
    const auto t0 = Clock::now();
    const auto ring_view = [](double azimuth) {
        return Eigen::Vector3d(0.45 * std::cos(azimuth), 0.45 * std::sin(azimuth), 0.35);
    };
    const std::vector<Eigen::Vector3d> one_view = {ring_view(0.0)};
    const std::vector<Eigen::Vector3d> three_views = {ring_view(0.0), ring_view(2.0 * M_PI / 3.0),
                                                      ring_view(4.0 * M_PI / 3.0)};
    const auto median_errors = [&](const SyntheticObject& obj) {
        std::vector<double> e1, e3;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            StabilityParams params;
            params.seed = 400 + seed;
            const auto sweep_err = [&](const std::vector<Eigen::Vector3d>& views) {
                const PointCloud cloud =
                    synthesize_partial_cloud(obj.mesh, views, 0.0005, seed).cloud;
                const SweepResult r = edge_sweep(obj, cloud, 31, params);
                return std::abs(r.estimated_threshold - r.oracle_threshold);
            };
            e1.push_back(sweep_err(one_view));
            e3.push_back(sweep_err(three_views));
        }
        return std::pair<double, double>(median(e1), median(e3));
    };
    const auto [box1, box3] = median_errors(make_uniform_box_object({0.1, 0.1, 0.08}));
    const auto [cyl1, cyl3] = median_errors(make_cylinder_object(0.05, 0.12));
    const double elapsed = seconds_since(t0);
    return {box3 <= box1 && cyl3 <= cyl1,
            fmt("median threshold error 3-view vs 1-view: box %.4f <= %.4f, cylinder %.4f <= "
                "%.4f (20 seeds), %.1f s",
                box3, box1, cyl3, cyl1, elapsed)};
}

// --- 5: agreement with the quasi-static oracle --------------------------------

Outcome criterion_oracle_agreement() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> yaw_draw(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> extent_draw(0.06, 0.16);
    std::uniform_real_distribution<double> shift_draw(-0.3, 0.3);
    std::uniform_real_distribution<double> radius_draw(0.03, 0.08);
    std::uniform_real_distribution<double> height_draw(0.05, 0.2);

    int agree = 0;
    int used = 0;
    std::uint64_t trial = 0;
    while (used < 500) {
        ++trial;
        const int shape = int(rng() % 3);
        SyntheticObject obj;
        if (shape == 0) {
            obj = make_uniform_box_object(
                {extent_draw(rng), extent_draw(rng), extent_draw(rng)});
        } else if (shape == 1) {
            obj = make_offset_box_object({extent_draw(rng), extent_draw(rng), extent_draw(rng)},
                                         shift_draw(rng));
        } else {
            obj = make_cylinder_object(radius_draw(rng), height_draw(rng));
        }
        const double yaw = yaw_draw(rng);
        const RigidPose pose = axis_angle_pose(Eigen::Vector3d::UnitZ(), yaw);
        const Eigen::Matrix2d rot2 = Eigen::Rotation2Dd(yaw).toRotationMatrix();

        Polygon2D posed_footprint;
        for (const auto& v : obj.footprint.vertices) posed_footprint.vertices.push_back(rot2 * v);
        double x_min = posed_footprint.vertices[0].x(), x_max = x_min;
        double y_min = posed_footprint.vertices[0].y(), y_max = y_min;
        for (const auto& v : posed_footprint.vertices) {
            x_min = std::min(x_min, v.x());
            x_max = std::max(x_max, v.x());
            y_min = std::min(y_min, v.y());
            y_max = std::max(y_max, v.y());
        }
        const double com_x = (rot2 * obj.true_com.head<2>()).x();
        const double width = x_max - x_min;
        const double analytic_threshold = (x_max - com_x) / width;
        const double overhang = unit(rng);
        if (std::abs(overhang - analytic_threshold) < 0.05) continue;  // boundary band

        // Table edge at x_e: support occupies x <= x_e.
        const double edge_x = x_max - overhang * width;
        Polygon2D support_rect;
        support_rect.vertices = {{x_min - 1.0, y_min - 1.0},
                                 {edge_x, y_min - 1.0},
                                 {edge_x, y_max + 1.0},
                                 {x_min - 1.0, y_max + 1.0}};

        StabilityParams params;
        params.seed = 9000 + trial;
        StabilityContext ctx;
        ctx.support_footprint = support_rect;
        const PointCloud cloud = sample_object_cloud(obj, 8000, 1000 + trial);
        const bool predicted =
            evaluate_placement_stability(cloud, pose, params, ctx).score > 0.5;

        const auto clipped = clip_convex(posed_footprint, support_rect);
        const bool truth = clipped.has_value() && quasi_static_stable(obj, pose, *clipped);

        agree += int(predicted == truth);
        ++used;
    }
    const double rate = double(agree) / double(used);
    const double elapsed = seconds_since(t0);
    return {rate >= 0.95,
            fmt("thresholded score matches the oracle on %.1f%% of %d poses (limit 95%%, "
                "5%%-overhang boundary band excluded), %.1f s",
                100.0 * rate, used, elapsed)};
}

// --- 6: batch unified scoring equals the naive triple loop --------------------

Outcome criterion_batch_equivalence() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> weight_draw(0.1, 2.0);
    for (int instance = 0; instance < 100; ++instance) {
        const std::size_t nk = 1 + rng() % 50;
        const std::size_t np = 1 + rng() % 50;
        std::vector<double> vg(nk), vp(nk * np);
        for (auto& v : vg) v = unit(rng);
        for (auto& v : vp) v = unit(rng) < 0.1 ? 0.0 : unit(rng);
        vg[0] = std::max(vg[0], 0.2);  // keep the peaks positive so both
        vp[0] = std::max(vp[0], 0.2);  // paths normalize identically
        CollisionMatrix C;
        C.grasp_count = nk;
        C.placement_count = np;
        C.entries.resize(nk * np);
        for (auto& c : C.entries) c = unit(rng) < 0.85 ? 1 : 0;
        UnifiedWeights w;
        w.grasp = weight_draw(rng);
        w.place = weight_draw(rng);

        const UnifiedScoreMatrix m = unified_scores(vg, vp, C, w);

        const double gpeak = *std::max_element(vg.begin(), vg.end());
        const double ppeak = *std::max_element(vp.begin(), vp.end());
        for (std::size_t k = 0; k < nk; ++k) {
            for (std::size_t p = 0; p < np; ++p) {
                const std::size_t i = k * np + p;
                const double naive = (w.grasp * (vg[k] / gpeak)) *
                                     (w.place * (vp[i] / ppeak)) * double(C.entries[i]);
                if (m.entries[i] != naive) {  // bit-for-bit
                    return {false, fmt("instance %d entry (%zu, %zu): batch %.17g != naive %.17g",
                                       instance, k, p, m.entries[i], naive)};
                }
            }
        }
    }
    return {true, fmt("batch equals the naive loop bit-for-bit on 100 instances up to 50x50, "
                      "%.2f s",
                      seconds_since(t0))};
}

// --- 7: reasoning-stage and pipeline latency ----------------------------------

Outcome criterion_latency() {
    const std::size_t nk = 500, np = 1000;
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    std::vector<double> vg(nk), vp(nk * np);
    for (auto& v : vg) v = unit(rng);
    for (auto& v : vp) v = unit(rng);
    CollisionMatrix C;
    C.grasp_count = nk;
    C.placement_count = np;
    C.entries.assign(nk * np, 1);
    for (std::size_t i = 0; i < C.entries.size(); i += 17) C.entries[i] = 0;
    const UnifiedWeights w;

    const auto stage = [&] {
        const UnifiedScoreMatrix m = unified_scores(vg, vp, C, w);
        return select_best_pair(m).size();
    };
    stage();  // warm-up: first-touch page faults are not part of the stage
    std::vector<double> times;
    for (int run = 0; run < 5; ++run) {
        const auto t0 = Clock::now();
        stage();
        times.push_back(seconds_since(t0));
    }
    const double stage_s = median(times);

    // Full pipeline on a synthetic tabletop scene, 500 sampled grasps.
    const SyntheticObject obj = make_uniform_box_object({0.08, 0.08, 0.08});
    SceneDescription scene;
    scene.object.cloud = sample_object_cloud(obj, 8000, 7);
    scene.object.hull = convex_hull_3d(scene.object.cloud.points);
    RigidPose shift;
    shift.translation = {0.0, 0.0, -0.02};
    scene.target.support = transform_mesh(shift, make_box_mesh({0.5, 0.5, 0.04}));
    const ReasoningParams params;
    const ReasoningReport rep = run_unified_reasoning(scene, {}, params, 500, 100, 7);
    const double pipeline_s = rep.timings.total_s - rep.timings.ingestion_s;

    return {stage_s < 0.050 && pipeline_s < 15.0,
            fmt("matrix+selection %.1f ms for 500x1000 (limit 50 ms, median of 5); pipeline "
                "minus ingestion %.2f s for %zu grasps x %zu placements (limit 15 s)",
                1e3 * stage_s, pipeline_s, rep.grasps.size(), rep.placements.size())};
}

// --- 8: packing-heuristic boundary values -------------------------------------

Outcome criterion_heuristic_boundaries() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> tau_draw(0.02, 0.3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        PackingHeuristicParams p;
        p.closeness_threshold = tau_draw(rng);
        // Keep tau - ln2/k above zero so the sparse half-power point exists.
        const double k_min = 1.2 * M_LN2 / p.closeness_threshold;
        p.decay_rate = k_min + unit(rng) * (300.0 - k_min);
        const double half_step = M_LN2 / p.decay_rate;
        p.collision_margin = 0.9 * unit(rng) * (p.closeness_threshold - half_step);

        p.mode = PackingHeuristicParams::Mode::dense;
        worst = std::max(worst, std::abs(packing_heuristic(p.closeness_threshold, p) - 1.0));
        worst = std::max(worst,
                         std::abs(packing_heuristic(p.closeness_threshold + half_step, p) - 0.5));
        if (p.collision_margin > 0.0 &&
            packing_heuristic(0.5 * p.collision_margin, p) != 0.0) {
            return {false, "dense mode scored a distance below the collision margin nonzero"};
        }

        p.mode = PackingHeuristicParams::Mode::sparse;
        worst = std::max(worst, std::abs(packing_heuristic(p.closeness_threshold, p) - 1.0));
        worst = std::max(worst,
                         std::abs(packing_heuristic(p.closeness_threshold - half_step, p) - 0.5));
        if (p.collision_margin > 0.0 &&
            packing_heuristic(0.5 * p.collision_margin, p) != 0.0) {
            return {false, "sparse mode scored a distance below the collision margin nonzero"};
        }
    }
    return {worst <= 1e-9,
            fmt("max |f_H - expected| at tau and the half-power points %.3g (limit 1e-9) over "
                "1000 draws, both modes, %.2f s",
                worst, seconds_since(t0))};
}

// --- 9: byte-identical artifacts ----------------------------------------------

Outcome criterion_determinism() {
    const auto t0 = Clock::now();
    const std::string first = run_cli(demo_args("grasps_top.txt"));
    if (first.empty()) return {false, "unify on the demo scene produced no output"};
    for (int run = 1; run < 5; ++run) {
        if (run_cli(demo_args("grasps_top.txt")) != first) {
            return {false, fmt("run %d differs from run 0", run)};
        }
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(first);
    } catch (const std::exception& e) {
        return {false, fmt("artifact is not valid JSON: %s", e.what())};
    }
    return {true, fmt("5 runs byte-identical (%zu bytes, %zu ranked pairs), %.1f s",
                      first.size(), doc.at("ranked").size(), seconds_since(t0))};
}

// --- 10: grasp choice flips the winning orientation ----------------------------

Outcome criterion_orientation_flip() {
    const auto t0 = Clock::now();
    const auto winner = [](const std::string& text) {
        const nlohmann::json doc = nlohmann::json::parse(text);
        const auto& best = doc.at("ranked").at(0);
        const std::size_t p = best.at("placement").get<std::size_t>();
        return std::pair<std::string, double>(
            doc.at("placements").at(p).at("orientation").get<std::string>(),
            best.at("score").get<double>());
    };
    try {
        const auto [top_label, top_score] = winner(run_cli(demo_args("grasps_top.txt")));
        const auto [side_label, side_score] = winner(run_cli(demo_args("grasps_side.txt")));
        const bool pass = top_label != side_label && top_score > 0.0 && side_score > 0.0;
        return {pass, fmt("top grasps place '%s' (score %.3f), side grasps place '%s' (score "
                          "%.3f), %.1f s",
                          top_label.c_str(), top_score, side_label.c_str(), side_score,
                          seconds_since(t0))};
    } catch (const std::exception& e) {
        return {false, fmt("demo run failed: %s", e.what())};
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"stability score endpoints exact", criterion_endpoints},
        {"edge-overhang tipping thresholds", criterion_edge_thresholds},
        {"inclination tipping angles", criterion_incline_thresholds},
        {"multi-view coverage monotonicity", criterion_coverage_monotonicity},
        {"quasi-static oracle agreement", criterion_oracle_agreement},
        {"batch scoring equals naive loop", criterion_batch_equivalence},
        {"reasoning and pipeline latency", criterion_latency},
        {"packing heuristic boundary values", criterion_heuristic_boundaries},
        {"deterministic unify artifact", criterion_determinism},
        {"grasp-dependent orientation flip", criterion_orientation_flip},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, fmt("unexpected exception: %s", e.what())};
        }
        failed += outcome.pass ? 0 : 1;
        std::printf("criterion %2zu [%s]: %s (%.1f s) — %s\n", i + 1,
                    criteria[i].first.c_str(), outcome.pass ? "PASS" : "FAIL",
                    seconds_since(t0), outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
