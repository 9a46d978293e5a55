#pragma once

#include <string>

#include "hullbench/mesh.hpp"

namespace hullbench {

/// Reads an ASCII OBJ or ASCII PLY mesh, chosen by file extension.
/// OBJ: `v x y z [r g b]` and `f` with 1-based indices (polygons are
/// fan-triangulated). PLY: ascii 1.0 only, vertex x/y/z with optional
/// red/green/blue, face vertex_indices. Binary PLY is rejected.
/// Parse failures throw ConfigError naming the file and line.
TriangleMesh load_mesh(const std::string& path);

/// Writes the mesh in the format implied by the extension (.obj or .ply).
/// Floats are written with 9 significant digits; PLY colors as uchar.
void save_mesh(const TriangleMesh& mesh, const std::string& path);

/// Formats a double with 9 significant digits (the on-disk float format).
std::string format_g9(double v);

}  // namespace hullbench
