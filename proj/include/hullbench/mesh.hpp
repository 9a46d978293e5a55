#pragma once

#include <array>
#include <vector>

#include "hullbench/vec3.hpp"

namespace hullbench {

/// Indexed triangle surface with optional per-vertex RGB colors in [0,1].
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<std::array<double, 3>> vertex_colors;  // empty, or one per vertex

    bool has_colors() const { return !vertex_colors.empty(); }

    /// Appends another mesh, rebasing its face indices.
    void append(const TriangleMesh& other);
};

struct PointCloud {
    std::vector<Vec3> points;
};

/// Throws std::invalid_argument naming the offending face/vertex if the mesh
/// violates an invariant (out-of-range index, repeated index in a face,
/// non-finite coordinate, color count mismatch).
void validate_mesh(const TriangleMesh& mesh);

/// Component-wise vertex extrema. Throws on an empty mesh.
AABB bounding_box(const TriangleMesh& mesh);

struct NormalizeTransform {
    double scale = 1.0;   // applied as v' = v * scale + offset
    Vec3 offset{0, 0, 0};

    Vec3 apply(const Vec3& v) const { return v * scale + offset; }
    Vec3 invert(const Vec3& v) const { return (v - offset) / scale; }
};

struct NormalizeResult {
    TriangleMesh mesh;
    NormalizeTransform transform;
};

/// Rescales so the bounding-box diagonal has length 1 and the box center sits
/// at the origin. The returned transform maps original to normalized
/// coordinates; its inverse recovers the input. Throws on a degenerate
/// (zero-diagonal) bounding box.
NormalizeResult normalize_to_unit(const TriangleMesh& mesh);

/// Applies an existing transform to a copy of the mesh (used to place a
/// second mesh in the same normalized frame).
TriangleMesh apply_transform(const TriangleMesh& mesh, const NormalizeTransform& t);

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);
double surface_area(const TriangleMesh& mesh);

/// True when every undirected edge is referenced by exactly two faces.
bool is_watertight(const TriangleMesh& mesh);

/// V - E + F over undirected edges.
long euler_characteristic(const TriangleMesh& mesh);

}  // namespace hullbench
