// Command-line surface: ingest clouds/meshes/grasps/config, run placement
// scoring, tipping sweeps, heuristic maps, the full reasoning pipeline, and
// pipeline timing benches; emit JSON or CSV artifacts that embed the
// effective configuration.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "placekit/config.hpp"
#include "placekit/errors.hpp"
#include "placekit/format.hpp"
#include "placekit/io.hpp"
#include "placekit/oracle.hpp"
#include "placekit/pipeline.hpp"
#include "placekit/report_json.hpp"

namespace {

using namespace placekit;

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ',';
        out += item;
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string config_footer(const RunConfig& config) {
    std::ostringstream out;
    for (const auto& [key, value] : config_echo(config)) {
        out << "# " << key << " = " << value << '\n';
    }
    return out.str();
}

// Flags shared by the scene-consuming subcommands. Precedence: flag, then
// config file, then built-in default.
struct SceneFlags {
    std::string config_path;
    std::string object, support, environment, grasps, output;
    std::vector<std::string> other;
    std::int64_t seed = -1;
    int n_grasps = -1;
    int n_placements = -1;

    void add_to(CLI::App* cmd, bool with_grasps = true) {
        cmd->add_option("--config", config_path, "key=value configuration file");
        cmd->add_option("--object", object, "object point cloud (PLY or XYZ, meters)");
        cmd->add_option("--support", support, "support surface mesh (OBJ)");
        cmd->add_option("--environment", environment, "obstacle mesh around the target (OBJ)");
        cmd->add_option("--other", other, "other object meshes already in the region (OBJ)");
        if (with_grasps) {
            cmd->add_option("--grasps", grasps,
                            "grasp candidate file; omitted: sample antipodal grasps");
        }
        cmd->add_option("--output", output, "output path; omitted: stdout");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--n-grasps", n_grasps, "synthetic grasp candidate count");
        cmd->add_option("--n-placements", n_placements, "placement sample count");
    }

    RunConfig resolve() const {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!object.empty()) cfg.object_path = object;
        if (!support.empty()) cfg.support_path = support;
        if (!environment.empty()) cfg.environment_path = environment;
        if (!other.empty()) cfg.other_objects_path = join_list(other);
        if (!grasps.empty()) cfg.grasps_path = grasps;
        if (!output.empty()) cfg.output_path = output;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (n_grasps >= 0) cfg.n_grasps = n_grasps;
        if (n_placements >= 0) cfg.n_placements = n_placements;
        if (cfg.object_path.empty()) throw std::invalid_argument("missing --object");
        if (cfg.support_path.empty()) throw std::invalid_argument("missing --support");
        return cfg;
    }
};

SceneDescription load_scene(const RunConfig& cfg) {
    SceneDescription scene;
    scene.object = make_object_model(load_point_cloud(cfg.object_path), RigidPose{});
    scene.target.support = load_mesh(cfg.support_path);
    if (!cfg.environment_path.empty()) {
        scene.target.environment = load_mesh(cfg.environment_path);
    }
    for (const auto& path : split_list(cfg.other_objects_path)) {
        scene.target.other_objects.push_back(load_mesh(path));
    }
    return scene;
}

std::vector<GraspCandidate> load_provided_grasps(const RunConfig& cfg) {
    if (cfg.grasps_path.empty()) return {};
    return load_grasps(cfg.grasps_path);
}

// Synthetic-object flags for the sweep subcommands.
struct ShapeFlags {
    std::string shape = "box";
    std::vector<double> extents = {0.1, 0.1, 0.1};
    double com_shift = 0.25;
    double radius = 0.05;
    double height = 0.1;
    double arm_width = 0.04;
    int cloud_points = 20000;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--shape", shape, "box, offset-box, cylinder, or l-shape")
            ->check(CLI::IsMember({"box", "offset-box", "cylinder", "l-shape"}));
        cmd->add_option("--extents", extents, "box extents in meters (x y z)")
            ->expected(3);
        cmd->add_option("--com-shift", com_shift,
                        "offset-box CoM shift, fraction of the x extent");
        cmd->add_option("--radius", radius, "cylinder radius, meters");
        cmd->add_option("--height", height, "cylinder height, meters");
        cmd->add_option("--arm-width", arm_width, "l-shape arm width, meters");
        cmd->add_option("--cloud-points", cloud_points, "surface samples in the test cloud");
    }

    SyntheticObject build() const {
        const Eigen::Vector3d e(extents[0], extents[1], extents[2]);
        if (shape == "box") return make_uniform_box_object(e);
        if (shape == "offset-box") return make_offset_box_object(e, com_shift);
        if (shape == "cylinder") return make_cylinder_object(radius, height);
        return make_l_shape_object(e, arm_width);
    }

    std::string footer() const {
        std::ostringstream out;
        out << "# shape = " << shape << '\n';
        if (shape == "cylinder") {
            out << "# radius = " << sig9(radius) << "\n# height = " << sig9(height) << '\n';
        } else {
            out << "# extents = " << sig9(extents[0]) << ' ' << sig9(extents[1]) << ' '
                << sig9(extents[2]) << '\n';
        }
        if (shape == "offset-box") out << "# com_shift = " << sig9(com_shift) << '\n';
        if (shape == "l-shape") out << "# arm_width = " << sig9(arm_width) << '\n';
        out << "# cloud_points = " << cloud_points << '\n';
        return out.str();
    }
};

void report_error(bool json_errors, const std::string& kind, const std::string& message,
                  const std::map<std::string, std::size_t>& diagnostics = {}, long line = -1) {
    if (json_errors) {
        std::cout << error_to_json(kind, message, diagnostics, line);
    } else {
        std::cerr << kind << ": " << message << '\n';
    }
}

int cmd_score_placements(const SceneFlags& flags) {
    const RunConfig cfg = flags.resolve();
    const SceneDescription scene = load_scene(cfg);
    const auto provided = load_provided_grasps(cfg);
    std::string doc;
    try {
        const ReasoningReport rep = run_unified_reasoning(scene, provided, cfg.params,
                                                          cfg.n_grasps, cfg.n_placements,
                                                          cfg.seed);
        doc = placements_to_json(rep.placements, rep.diagnostics, config_echo(cfg));
    } catch (const NoFeasiblePair& e) {
        // An empty candidate list is a legitimate answer for this command;
        // the diagnostics say which stage removed everything.
        doc = placements_to_json({}, e.diagnostics, config_echo(cfg));
    }
    write_output(cfg.output_path, doc);
    return 0;
}

int cmd_unify(const SceneFlags& flags, bool timings) {
    const RunConfig cfg = flags.resolve();
    const SceneDescription scene = load_scene(cfg);
    const auto provided = load_provided_grasps(cfg);
    const ReasoningReport rep = run_unified_reasoning(scene, provided, cfg.params, cfg.n_grasps,
                                                      cfg.n_placements, cfg.seed);
    write_output(cfg.output_path, report_to_json(rep, config_echo(cfg), timings));
    return 0;
}

int cmd_sweep_edge(const std::string& config_path, const ShapeFlags& shape, int steps,
                   const std::string& output) {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (!output.empty()) cfg.output_path = output;
    const SyntheticObject obj = shape.build();
    const PointCloud cloud = sample_object_cloud(obj, shape.cloud_points, cfg.seed);
    const SweepResult result = edge_sweep(obj, cloud, steps, cfg.params.stability);
    write_output(cfg.output_path, to_csv(result) + shape.footer() + config_footer(cfg));
    return 0;
}

int cmd_sweep_incline(const std::string& config_path, const ShapeFlags& shape,
                      double max_angle, int steps, const std::string& output) {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (!output.empty()) cfg.output_path = output;
    if (steps < 2) throw std::invalid_argument("--angle-steps must be at least 2");
    std::vector<double> angles(steps);
    for (int i = 0; i < steps; ++i) angles[i] = max_angle * double(i) / double(steps - 1);
    const SyntheticObject obj = shape.build();
    const PointCloud cloud = sample_object_cloud(obj, shape.cloud_points, cfg.seed);
    const SweepResult result = incline_sweep(obj, cloud, angles, cfg.params.stability);
    write_output(cfg.output_path, to_csv(result) + shape.footer() + config_footer(cfg));
    return 0;
}

int cmd_heuristic_map(const SceneFlags& flags, int resolution) {
    const RunConfig cfg = flags.resolve();
    if (resolution < 2) throw std::invalid_argument("--resolution must be at least 2");
    const SceneDescription scene = load_scene(cfg);
    const TriMesh& support = scene.target.support;

    double min_x = support.vertices[0].x(), max_x = min_x;
    double min_y = support.vertices[0].y(), max_y = min_y;
    double top_z = support.vertices[0].z();
    for (const auto& v : support.vertices) {
        min_x = std::min(min_x, v.x());
        max_x = std::max(max_x, v.x());
        min_y = std::min(min_y, v.y());
        max_y = std::max(max_y, v.y());
        top_z = std::max(top_z, v.z());
    }
    double hull_min_z = scene.object.hull.vertices[0].z();
    for (const auto& v : scene.object.hull.vertices) hull_min_z = std::min(hull_min_z, v.z());

    std::ostringstream csv;
    csv << "x,y,heuristic\n";
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            RigidPose pose;
            pose.translation.x() = min_x + (max_x - min_x) * double(i) / double(resolution - 1);
            pose.translation.y() = min_y + (max_y - min_y) * double(j) / double(resolution - 1);
            pose.translation.z() = top_z - hull_min_z;
            const double clearance =
                nearest_object_clearance(transform_mesh(pose, scene.object.hull), scene.target);
            const double score = packing_heuristic(clearance, cfg.params.heuristic);
            csv << sig9(pose.translation.x()) << ',' << sig9(pose.translation.y()) << ','
                << sig9(score) << '\n';
        }
    }
    write_output(cfg.output_path, csv.str() + config_footer(cfg));
    return 0;
}

int cmd_bench(const std::string& config_path, const std::vector<int>& grasp_counts,
              const std::string& output) {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (!output.empty()) cfg.output_path = output;

    // Fixed synthetic scene: a cube on an open table, synthetic grasps.
    const SyntheticObject obj = make_uniform_box_object({0.08, 0.08, 0.08});
    SceneDescription scene;
    scene.object.cloud = sample_object_cloud(obj, 8000, cfg.seed);
    scene.object.hull = convex_hull_3d(scene.object.cloud.points);
    RigidPose shift;
    shift.translation = {0.0, 0.0, -0.02};
    scene.target.support = transform_mesh(shift, make_box_mesh({0.5, 0.5, 0.04}));

    std::ostringstream csv;
    csv << "grasps,placements,pairs,ingestion_s,placability_s,collision_s,reasoning_s,total_s\n";
    for (int count : grasp_counts) {
        const ReasoningReport rep = run_unified_reasoning(scene, {}, cfg.params, count,
                                                          cfg.n_placements, cfg.seed);
        const StageTimings& t = rep.timings;
        csv << rep.grasps.size() << ',' << rep.placements.size() << ','
            << rep.grasps.size() * rep.placements.size() << ',' << sig9(t.ingestion_s) << ','
            << sig9(t.placability_s) << ',' << sig9(t.collision_s) << ','
            << sig9(t.reasoning_s) << ',' << sig9(t.total_s) << '\n';
    }
    write_output(cfg.output_path, csv.str() + config_footer(cfg));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"placeability scoring and unified pick-and-place reasoning"};
    app.require_subcommand(1);
    bool json_errors = false;
    app.add_flag("--json-errors", json_errors, "report errors as a JSON document on stdout");

    SceneFlags score_flags;
    auto* score = app.add_subcommand(
        "score-placements", "score placement candidates and report the component breakdown");
    score_flags.add_to(score);

    SceneFlags unify_flags;
    bool unify_timings = false;
    auto* unify = app.add_subcommand(
        "unify", "full reasoning run: ranked grasp-placement pairs as JSON");
    unify_flags.add_to(unify);
    unify->add_flag("--timings", unify_timings,
                    "include wall-clock stage timings (varies between runs)");

    std::string edge_config, edge_output;
    ShapeFlags edge_shape;
    int edge_steps = 41;
    auto* edge = app.add_subcommand(
        "sweep-edge", "slide a synthetic object over a table edge and emit the score curve");
    edge->add_option("--config", edge_config, "key=value configuration file");
    edge_shape.add_to(edge);
    edge->add_option("--steps", edge_steps, "overhang fractions sampled in [0, 1]");
    edge->add_option("--output", edge_output, "output path; omitted: stdout");

    std::string incline_config, incline_output;
    ShapeFlags incline_shape;
    double incline_max = 60.0;
    int incline_steps = 61;
    auto* incline = app.add_subcommand(
        "sweep-incline", "tilt the support plane and emit the score curve");
    incline->add_option("--config", incline_config, "key=value configuration file");
    incline_shape.add_to(incline);
    incline->add_option("--max-angle", incline_max, "largest inclination, degrees (<= 60)");
    incline->add_option("--angle-steps", incline_steps, "angles sampled in [0, max]");
    incline->add_option("--output", incline_output, "output path; omitted: stdout");

    SceneFlags map_flags;
    int map_resolution = 41;
    auto* map = app.add_subcommand(
        "heuristic-map", "grid of packing-heuristic values over the support surface");
    map_flags.add_to(map, /*with_grasps=*/false);
    map->add_option("--resolution", map_resolution, "grid points per axis");

    std::string bench_config, bench_output;
    std::vector<int> bench_counts = {100, 250, 500};
    auto* bench = app.add_subcommand(
        "bench", "pipeline stage timings over grasp candidate counts (synthetic scene)");
    bench->add_option("--config", bench_config, "key=value configuration file");
    bench->add_option("--grasp-counts", bench_counts, "grasp candidate counts to time")
        ->delimiter(',');
    bench->add_option("--output", bench_output, "output path; omitted: stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (score->parsed()) return cmd_score_placements(score_flags);
        if (unify->parsed()) return cmd_unify(unify_flags, unify_timings);
        if (edge->parsed()) return cmd_sweep_edge(edge_config, edge_shape, edge_steps,
                                                  edge_output);
        if (incline->parsed()) return cmd_sweep_incline(incline_config, incline_shape,
                                                        incline_max, incline_steps,
                                                        incline_output);
        if (map->parsed()) return cmd_heuristic_map(map_flags, map_resolution);
        if (bench->parsed()) return cmd_bench(bench_config, bench_counts, bench_output);
    } catch (const ParseError& e) {
        report_error(json_errors, "ParseError", e.what(), {}, static_cast<long>(e.line));
        return 1;
    } catch (const NoFeasiblePair& e) {
        report_error(json_errors, "NoFeasiblePair", e.what(), e.diagnostics);
        return 1;
    } catch (const EmptyGeometry& e) {
        report_error(json_errors, "EmptyGeometry", e.what());
        return 1;
    } catch (const GeometryError& e) {
        report_error(json_errors, "GeometryError", e.what());
        return 1;
    } catch (const ShapeError& e) {
        report_error(json_errors, "ShapeError", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        report_error(json_errors, "InvalidArgument", e.what());
        return 1;
    } catch (const std::exception& e) {
        report_error(json_errors, "Error", e.what());
        return 1;
    }
    return 0;
}
