#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

namespace placekit {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyGeometry : GeometryError {
    explicit EmptyGeometry(const std::string& what = "empty geometry") : GeometryError(what) {}
};

struct DegenerateHull : GeometryError {
    std::size_t point_count;
    explicit DegenerateHull(std::size_t count)
        : GeometryError("degenerate hull: " + std::to_string(count) + " effective point(s)"),
          point_count(count) {}
};

struct DegenerateSupport : GeometryError {
    std::size_t contact_count;
    explicit DegenerateSupport(std::size_t count)
        : GeometryError("degenerate support: " + std::to_string(count) + " effective contact(s)"),
          contact_count(count) {}
};

struct InsufficientPoints : GeometryError {
    explicit InsufficientPoints(const std::string& what) : GeometryError(what) {}
};

struct MissingNormals : GeometryError {
    MissingNormals() : GeometryError("point cloud has no normals") {}
};

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    std::size_t line;
    ParseError(const std::string& what, std::size_t line_number)
        : std::runtime_error(what + " (line " + std::to_string(line_number) + ")"),
          line(line_number) {}
};

// Raised when every grasp-placement pair scores zero. Carries per-stage
// elimination counts so callers can report where candidates were lost.
struct NoFeasiblePair : std::runtime_error {
    std::map<std::string, std::size_t> diagnostics;
    explicit NoFeasiblePair(std::map<std::string, std::size_t> diag = {})
        : std::runtime_error("no feasible grasp-placement pair"), diagnostics(std::move(diag)) {}
};

}  // namespace placekit
