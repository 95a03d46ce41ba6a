#pragma once

#include <string>
#include <vector>

#include "placekit/geom.hpp"
#include "placekit/grasp.hpp"

namespace placekit {

// Reads a point cloud from ASCII PLY (x y z and optional nx ny nz vertex
// properties) or plain XYZ (3 or 6 whitespace-separated columns per line,
// '#' comments allowed). The format is detected from the file content: a
// leading "ply" line selects PLY. Units are meters. Normals, when present,
// are re-normalized to unit length on load.
// Throws ParseError (with line number) on malformed or non-finite input,
// EmptyGeometry when the file holds no points, std::runtime_error when the
// file cannot be opened.
PointCloud load_point_cloud(const std::string& path);

// Writes ASCII PLY when `path` ends in ".ply", plain XYZ otherwise (6
// columns when normals are present). Numbers carry 9 significant digits, so
// a round-trip reproduces coordinates within 1e-7 relative error.
void save_point_cloud(const std::string& path, const PointCloud& cloud);

// Reads an ASCII OBJ mesh: `v x y z` and `f i j k [l...]` records,
// 1-indexed; faces with more than three vertices are fan-split into
// triangles; `vt`/`vn`/grouping/material records are ignored. Face entries
// of the form i/t/n keep only the vertex index.
// Throws ParseError (with line number) on malformed records or out-of-range
// indices, EmptyGeometry when no faces result.
TriMesh load_mesh(const std::string& path);

// Writes the mesh as ASCII OBJ with 9-significant-digit vertex coordinates.
void save_mesh(const std::string& path, const TriMesh& mesh);

// Reads grasp candidates from plain text: one grasp per line, 14 numbers —
// the rigid pose as a row-major 3x4 matrix [R | t] (meters) followed by the
// grasp width (meters) and the quality in [0, 1]. '#' comments and blank
// lines are allowed. The rotation block must be orthonormal with det +1
// within text precision (1e-6).
// Throws ParseError (with line number) on malformed lines, EmptyGeometry
// when the file holds no grasps.
std::vector<GraspCandidate> load_grasps(const std::string& path);

// Writes grasps in the format accepted by load_grasps.
void save_grasps(const std::string& path, const std::vector<GraspCandidate>& grasps);

}  // namespace placekit
