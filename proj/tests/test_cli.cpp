// End-to-end checks of the command-line binary: exit codes, artifact shape,
// determinism, and the error-reporting contract. The binary path and the
// bundled demo directory arrive as compile definitions.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

const std::string kCli = PLACEKIT_CLI_PATH;
const std::string kDemo = PLACEKIT_DEMO_DIR;

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = kCli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {};
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string& scratch_dir() {
    static const std::string dir = [] {
        char tmpl[] = "/tmp/placekit_cli_XXXXXX";
        const char* made = mkdtemp(tmpl);
        return std::string(made != nullptr ? made : "/tmp");
    }();
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& content) {
    const std::string path = scratch_dir() + "/" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

std::string demo_scene_args(const std::string& grasp_file) {
    return "--object " + kDemo + "/object.ply --support " + kDemo + "/support.obj" +
           " --environment " + kDemo + "/shelf.obj --grasps " + kDemo + "/" + grasp_file +
           " --config " + kDemo + "/demo.cfg";
}

}  // namespace

TEST_CASE("help and invocation errors") {
    const CliResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("unify") != std::string::npos);
    CHECK(help.out.find("sweep-edge") != std::string::npos);

    CHECK(run_cli("").exit_code != 0);           // a subcommand is required
    CHECK(run_cli("frobnicate").exit_code != 0);  // unknown subcommand
}

TEST_CASE("unify: deterministic artifact with embedded config") {
    const CliResult a = run_cli("unify " + demo_scene_args("grasps_top.txt"));
    const CliResult b = run_cli("unify " + demo_scene_args("grasps_top.txt"));
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const nlohmann::json doc = nlohmann::json::parse(a.out);
    CHECK(doc.at("config").at("seed") == "13");
    CHECK(doc.at("grasps").size() == 1);
    REQUIRE(!doc.at("ranked").empty());
    CHECK(doc.at("ranked").at(0).at("score").get<double>() > 0.0);
    // Timings are opt-in: they vary between runs and would break byte
    // comparisons.
    CHECK(!doc.contains("timings"));
    const CliResult timed = run_cli("unify --timings " + demo_scene_args("grasps_top.txt"));
    CHECK(nlohmann::json::parse(timed.out).contains("timings"));
}

TEST_CASE("unify: top vs side grasps flip the winning orientation") {
    const nlohmann::json top =
        nlohmann::json::parse(run_cli("unify " + demo_scene_args("grasps_top.txt")).out);
    const nlohmann::json side =
        nlohmann::json::parse(run_cli("unify " + demo_scene_args("grasps_side.txt")).out);

    const auto winner_label = [](const nlohmann::json& doc) {
        const std::size_t p = doc.at("ranked").at(0).at("placement").get<std::size_t>();
        return doc.at("placements").at(p).at("orientation").get<std::string>();
    };
    CHECK(top.at("ranked").at(0).at("score").get<double>() > 0.0);
    CHECK(side.at("ranked").at(0).at("score").get<double>() > 0.0);
    CHECK(winner_label(top) != winner_label(side));
}

TEST_CASE("unify: --output file matches stdout bytes") {
    const std::string path = scratch_dir() + "/unify_out.json";
    const CliResult direct = run_cli("unify " + demo_scene_args("grasps_top.txt"));
    const CliResult filed =
        run_cli("unify " + demo_scene_args("grasps_top.txt") + " --output " + path);
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == direct.out);
}

TEST_CASE("score-placements: all-colliding scene yields an empty list, exit 0") {
    // An absurd gripper margin makes every grasp-placement pair collide; the
    // command still succeeds and reports which stage removed everything.
    const std::string cfg =
        write_scratch("wide_margin.cfg", "seed = 13\nn_placements = 8\ngripper_margin = 10\n");
    const CliResult r = run_cli("score-placements --object " + kDemo +
                                "/object.ply --support " + kDemo + "/support.obj --grasps " +
                                kDemo + "/grasps_top.txt --config " + cfg);
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("placements").empty());
    const auto& diag = doc.at("diagnostics");
    CHECK(diag.at("pairs_total").get<std::size_t>() > 0);
    CHECK(diag.at("pairs_removed_gripper_collision") == diag.at("pairs_total"));
}

TEST_CASE("error reporting: JSON on request, stderr otherwise, exit nonzero") {
    const CliResult quiet =
        run_cli("unify --object /nonexistent.ply --support " + kDemo + "/support.obj");
    CHECK(quiet.exit_code == 1);
    CHECK(quiet.out.empty());  // message goes to stderr

    const CliResult json_err = run_cli("--json-errors unify --object /nonexistent.ply --support " +
                                       kDemo + "/support.obj");
    CHECK(json_err.exit_code == 1);
    const nlohmann::json doc = nlohmann::json::parse(json_err.out);
    CHECK(doc.at("message").get<std::string>().find("/nonexistent.ply") != std::string::npos);
}

TEST_CASE("error reporting: config and grasp parse errors carry line numbers") {
    const std::string bad_cfg = write_scratch("bad.cfg", "seed = 1\nbogus_key = 2\n");
    const CliResult cfg_err = run_cli("--json-errors unify --config " + bad_cfg + " --object " +
                                      kDemo + "/object.ply --support " + kDemo + "/support.obj");
    CHECK(cfg_err.exit_code == 1);
    nlohmann::json doc = nlohmann::json::parse(cfg_err.out);
    CHECK(doc.at("error") == "ParseError");
    CHECK(doc.at("line") == 2);

    const std::string bad_grasps = write_scratch("bad_grasps.txt", "# header\n1 2 3\n");
    const CliResult grasp_err =
        run_cli("--json-errors unify --object " + kDemo + "/object.ply --support " + kDemo +
                "/support.obj --grasps " + bad_grasps);
    CHECK(grasp_err.exit_code == 1);
    doc = nlohmann::json::parse(grasp_err.out);
    CHECK(doc.at("error") == "ParseError");
    CHECK(doc.at("line") == 2);
}

TEST_CASE("sweep-incline: curve footer matches the analytic tipping angle") {
    const CliResult r = run_cli(
        "sweep-incline --shape box --extents 0.1 0.1 0.2 --max-angle 50 --angle-steps 26 "
        "--cloud-points 6000");
    REQUIRE(r.exit_code == 0);
    double est = 0.0, oracle = 0.0;
    const auto pos = r.out.find("# estimated_threshold=");
    REQUIRE(pos != std::string::npos);
    REQUIRE(std::sscanf(r.out.c_str() + pos, "# estimated_threshold=%lf,oracle_threshold=%lf",
                        &est, &oracle) == 2);
    CHECK(oracle == doctest::Approx(26.5650512).epsilon(1e-6));
    CHECK(std::abs(est - 26.5650512) <= 3.0);
    // The effective configuration is echoed into the artifact.
    CHECK(r.out.find("# stability.num_hypotheses = 2000") != std::string::npos);
}

TEST_CASE("sweep-edge: uniform box tips near half overhang") {
    const CliResult r =
        run_cli("sweep-edge --shape box --extents 0.1 0.1 0.08 --steps 41 --cloud-points 8000");
    REQUIRE(r.exit_code == 0);
    double est = 0.0, oracle = 0.0;
    const auto pos = r.out.find("# estimated_threshold=");
    REQUIRE(pos != std::string::npos);
    REQUIRE(std::sscanf(r.out.c_str() + pos, "# estimated_threshold=%lf,oracle_threshold=%lf",
                        &est, &oracle) == 2);
    CHECK(oracle == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(est - 0.5) <= 0.05);
}

TEST_CASE("heuristic-map: grid artifact over the support surface") {
    const CliResult r = run_cli("heuristic-map --object " + kDemo + "/object.ply --support " +
                                kDemo + "/support.obj --environment " + kDemo +
                                "/shelf.obj --resolution 5");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "x,y,heuristic");
    int rows = 0;
    while (std::getline(lines, line) && !line.empty() && line[0] != '#') {
        double x = 0, y = 0, h = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &h) == 3);
        CHECK(h >= 0.0);
        CHECK(h <= 1.0);
        ++rows;
    }
    CHECK(rows == 25);
}
