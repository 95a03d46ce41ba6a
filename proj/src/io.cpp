#include "placekit/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "placekit/errors.hpp"
#include "placekit/format.hpp"

namespace placekit {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file for reading: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    return out;
}

bool has_suffix(const std::string& path, const std::string& suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Splits on whitespace; a '#' starts a comment reaching to the end of line.
std::vector<std::string> significant_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream stream(line);
    std::string tok;
    while (stream >> tok) {
        if (tok.front() == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

double parse_finite(const std::string& token, std::size_t line_number) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &consumed);
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + token + "'", line_number);
    }
    if (consumed != token.size()) {
        throw ParseError("trailing characters in number '" + token + "'", line_number);
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite value '" + token + "'", line_number);
    }
    return value;
}

std::vector<double> parse_numbers(const std::vector<std::string>& tokens,
                                  std::size_t line_number) {
    std::vector<double> values;
    values.reserve(tokens.size());
    for (const auto& tok : tokens) values.push_back(parse_finite(tok, line_number));
    return values;
}

Eigen::Vector3d unit_normal(double nx, double ny, double nz, std::size_t line_number) {
    Eigen::Vector3d n(nx, ny, nz);
    const double len = n.norm();
    if (len < 1e-12) throw ParseError("zero-length normal", line_number);
    return n / len;
}

PointCloud load_ply(std::ifstream& in) {
    std::string line;
    std::size_t line_number = 1;  // the "ply" magic line was already consumed

    std::size_t vertex_count = 0;
    bool seen_vertex_element = false;
    bool in_vertex_element = false;
    std::vector<std::string> properties;
    while (std::getline(in, line)) {
        ++line_number;
        const auto tokens = significant_tokens(line);
        if (tokens.empty() || tokens[0] == "comment") continue;
        if (tokens[0] == "format") {
            if (tokens.size() < 2 || tokens[1] != "ascii") {
                throw ParseError("only ascii PLY is supported", line_number);
            }
        } else if (tokens[0] == "element") {
            if (tokens.size() != 3) throw ParseError("malformed element line", line_number);
            if (tokens[1] == "vertex") {
                seen_vertex_element = true;
                in_vertex_element = true;
                vertex_count = static_cast<std::size_t>(
                    parse_finite(tokens[2], line_number));
            } else {
                if (parse_finite(tokens[2], line_number) != 0.0) {
                    throw ParseError("unsupported element '" + tokens[1] + "'", line_number);
                }
                in_vertex_element = false;
            }
        } else if (tokens[0] == "property") {
            if (!in_vertex_element) continue;  // properties of an empty element
            if (tokens.size() != 3 || (tokens[1] != "float" && tokens[1] != "double")) {
                throw ParseError("unsupported vertex property", line_number);
            }
            properties.push_back(tokens[2]);
        } else if (tokens[0] == "end_header") {
            break;
        } else {
            throw ParseError("unexpected header line '" + tokens[0] + "'", line_number);
        }
    }
    if (!seen_vertex_element) throw ParseError("missing vertex element", line_number);

    bool with_normals = false;
    if (properties == std::vector<std::string>{"x", "y", "z"}) {
        with_normals = false;
    } else if (properties == std::vector<std::string>{"x", "y", "z", "nx", "ny", "nz"}) {
        with_normals = true;
    } else {
        throw ParseError("vertex properties must be x y z [nx ny nz]", line_number);
    }

    PointCloud cloud;
    cloud.points.reserve(vertex_count);
    if (with_normals) cloud.normals.reserve(vertex_count);
    while (cloud.points.size() < vertex_count) {
        if (!std::getline(in, line)) {
            throw ParseError("unexpected end of file: expected " +
                                 std::to_string(vertex_count) + " vertices, got " +
                                 std::to_string(cloud.points.size()),
                             line_number);
        }
        ++line_number;
        const auto tokens = significant_tokens(line);
        if (tokens.empty()) continue;
        const auto values = parse_numbers(tokens, line_number);
        if (values.size() != (with_normals ? 6u : 3u)) {
            throw ParseError("expected " + std::to_string(with_normals ? 6 : 3) +
                                 " values per vertex, got " + std::to_string(values.size()),
                             line_number);
        }
        cloud.points.emplace_back(values[0], values[1], values[2]);
        if (with_normals) {
            cloud.normals.push_back(unit_normal(values[3], values[4], values[5], line_number));
        }
    }
    if (cloud.points.empty()) throw EmptyGeometry("point cloud file holds no points");
    return cloud;
}

PointCloud load_xyz(std::ifstream& in, const std::string& first_line) {
    PointCloud cloud;
    std::size_t arity = 0;
    std::string line = first_line;
    std::size_t line_number = 1;
    bool pending = true;
    while (pending || std::getline(in, line)) {
        if (!pending) ++line_number;
        pending = false;
        const auto tokens = significant_tokens(line);
        if (tokens.empty()) continue;
        const auto values = parse_numbers(tokens, line_number);
        if (arity == 0) {
            if (values.size() != 3 && values.size() != 6) {
                throw ParseError("expected 3 (x y z) or 6 (x y z nx ny nz) columns, got " +
                                     std::to_string(values.size()),
                                 line_number);
            }
            arity = values.size();
        } else if (values.size() != arity) {
            throw ParseError("inconsistent column count: expected " + std::to_string(arity) +
                                 ", got " + std::to_string(values.size()),
                             line_number);
        }
        cloud.points.emplace_back(values[0], values[1], values[2]);
        if (arity == 6) {
            cloud.normals.push_back(unit_normal(values[3], values[4], values[5], line_number));
        }
    }
    if (cloud.points.empty()) throw EmptyGeometry("point cloud file holds no points");
    return cloud;
}

}  // namespace

PointCloud load_point_cloud(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string first_line;
    if (!std::getline(in, first_line)) throw EmptyGeometry("point cloud file is empty");
    const auto first_tokens = significant_tokens(first_line);
    if (first_tokens.size() == 1 && first_tokens[0] == "ply") return load_ply(in);
    return load_xyz(in, first_line);
}

void save_point_cloud(const std::string& path, const PointCloud& cloud) {
    cloud.validate();
    std::ofstream out = open_output(path);
    const bool ply = has_suffix(path, ".ply");
    if (ply) {
        out << "ply\nformat ascii 1.0\nelement vertex " << cloud.points.size() << "\n"
            << "property double x\nproperty double y\nproperty double z\n";
        if (cloud.has_normals()) {
            out << "property double nx\nproperty double ny\nproperty double nz\n";
        }
        out << "end_header\n";
    }
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const Eigen::Vector3d& p = cloud.points[i];
        out << sig9(p.x()) << ' ' << sig9(p.y()) << ' ' << sig9(p.z());
        if (cloud.has_normals()) {
            const Eigen::Vector3d& n = cloud.normals[i];
            out << ' ' << sig9(n.x()) << ' ' << sig9(n.y()) << ' ' << sig9(n.z());
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

TriMesh load_mesh(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto tokens = significant_tokens(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "v") {
            if (tokens.size() != 4) {
                throw ParseError("vertex record needs 3 coordinates", line_number);
            }
            vertices.emplace_back(parse_finite(tokens[1], line_number),
                                  parse_finite(tokens[2], line_number),
                                  parse_finite(tokens[3], line_number));
        } else if (tokens[0] == "f") {
            if (tokens.size() < 4) {
                throw ParseError("face record needs at least 3 vertices", line_number);
            }
            std::vector<int> poly;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                // "i", "i/t", "i/t/n", and "i//n" all carry the vertex first.
                const std::string head = tokens[i].substr(0, tokens[i].find('/'));
                const double raw = parse_finite(head, line_number);
                const int index = static_cast<int>(raw);
                if (raw != index || index < 1 || index > static_cast<int>(vertices.size())) {
                    throw ParseError("vertex index " + head + " out of range", line_number);
                }
                poly.push_back(index - 1);
            }
            for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
                faces.push_back({poly[0], poly[i], poly[i + 1]});
            }
        }
        // Any other record type (vn, vt, o, g, s, mtllib, usemtl, ...) is ignored.
    }
    if (faces.empty()) throw EmptyGeometry("mesh file holds no faces");
    return TriMesh::create(std::move(vertices), std::move(faces));
}

void save_mesh(const std::string& path, const TriMesh& mesh) {
    std::ofstream out = open_output(path);
    for (const auto& v : mesh.vertices) {
        out << "v " << sig9(v.x()) << ' ' << sig9(v.y()) << ' ' << sig9(v.z()) << '\n';
    }
    for (const auto& f : mesh.faces) {
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<GraspCandidate> load_grasps(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<GraspCandidate> grasps;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto tokens = significant_tokens(line);
        if (tokens.empty()) continue;
        const auto v = parse_numbers(tokens, line_number);
        if (v.size() != 14) {
            throw ParseError("expected 14 numbers (12 pose + width + quality), got " +
                                 std::to_string(v.size()),
                             line_number);
        }
        GraspCandidate g;
        g.pose.rotation << v[0], v[1], v[2], v[4], v[5], v[6], v[8], v[9], v[10];
        g.pose.translation = {v[3], v[7], v[11]};
        if (!g.pose.rotation_valid(1e-6)) {
            throw ParseError("rotation block is not orthonormal with det +1", line_number);
        }
        g.width = v[12];
        g.quality = v[13];
        if (!(g.width > 0.0)) throw ParseError("grasp width must be positive", line_number);
        if (!(g.quality >= 0.0 && g.quality <= 1.0)) {
            throw ParseError("grasp quality must lie in [0, 1]", line_number);
        }
        grasps.push_back(g);
    }
    if (grasps.empty()) throw EmptyGeometry("grasp file holds no grasps");
    return grasps;
}

void save_grasps(const std::string& path, const std::vector<GraspCandidate>& grasps) {
    std::ofstream out = open_output(path);
    out << "# one grasp per line: row-major 3x4 pose [R | t], width, quality\n";
    for (const auto& g : grasps) {
        for (int row = 0; row < 3; ++row) {
            for (int col = 0; col < 3; ++col) out << sig9(g.pose.rotation(row, col)) << ' ';
            out << sig9(g.pose.translation(row)) << ' ';
        }
        out << sig9(g.width) << ' ' << sig9(g.quality) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace placekit
