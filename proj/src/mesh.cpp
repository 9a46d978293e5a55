#include "hullbench/mesh.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace hullbench {

void TriangleMesh::append(const TriangleMesh& other) {
    const int base = static_cast<int>(vertices.size());
    const bool colors = has_colors() || other.has_colors();
    if (colors && vertex_colors.size() < vertices.size())
        vertex_colors.resize(vertices.size(), {0.7, 0.7, 0.7});
    vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
    if (colors) {
        if (other.has_colors())
            vertex_colors.insert(vertex_colors.end(), other.vertex_colors.begin(),
                                 other.vertex_colors.end());
        else
            vertex_colors.resize(vertices.size(), {0.7, 0.7, 0.7});
    }
    for (const auto& f : other.faces)
        faces.push_back({f[0] + base, f[1] + base, f[2] + base});
}

void validate_mesh(const TriangleMesh& mesh) {
    const int n = static_cast<int>(mesh.vertices.size());
    for (int i = 0; i < n; ++i) {
        if (!mesh.vertices[i].finite())
            throw std::invalid_argument("vertex " + std::to_string(i) +
                                        " has a non-finite coordinate");
    }
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& face = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            if (face[k] < 0 || face[k] >= n)
                throw std::invalid_argument("face " + std::to_string(f) +
                                            " references vertex " +
                                            std::to_string(face[k]) + " of " +
                                            std::to_string(n));
        }
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2])
            throw std::invalid_argument("face " + std::to_string(f) +
                                        " is degenerate (repeated vertex index)");
    }
    if (mesh.has_colors()) {
        if (mesh.vertex_colors.size() != mesh.vertices.size())
            throw std::invalid_argument("vertex_colors length " +
                                        std::to_string(mesh.vertex_colors.size()) +
                                        " does not match vertex count " +
                                        std::to_string(mesh.vertices.size()));
        for (std::size_t i = 0; i < mesh.vertex_colors.size(); ++i) {
            for (double c : mesh.vertex_colors[i]) {
                if (!(c >= 0.0 && c <= 1.0))
                    throw std::invalid_argument("vertex " + std::to_string(i) +
                                                " color outside [0,1]");
            }
        }
    }
}

AABB bounding_box(const TriangleMesh& mesh) {
    if (mesh.vertices.empty())
        throw std::invalid_argument("bounding_box of an empty mesh");
    AABB box = AABB::empty();
    for (const auto& v : mesh.vertices) box.extend(v);
    return box;
}

NormalizeResult normalize_to_unit(const TriangleMesh& mesh) {
    const AABB box = bounding_box(mesh);
    const double diag = box.diagonal();
    if (!(diag > 0.0))
        throw std::invalid_argument("normalize_to_unit: zero-diagonal bounding box");
    NormalizeTransform t;
    t.scale = 1.0 / diag;
    t.offset = box.center() * (-1.0 / diag);
    NormalizeResult out;
    out.transform = t;
    out.mesh = apply_transform(mesh, t);
    return out;
}

TriangleMesh apply_transform(const TriangleMesh& mesh, const NormalizeTransform& t) {
    TriangleMesh out = mesh;
    for (auto& v : out.vertices) v = t.apply(v);
    return out;
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    return 0.5 * (b - a).cross(c - a).norm();
}

double surface_area(const TriangleMesh& mesh) {
    double area = 0.0;
    for (const auto& f : mesh.faces)
        area += triangle_area(mesh.vertices[f[0]], mesh.vertices[f[1]],
                              mesh.vertices[f[2]]);
    return area;
}

namespace {

std::unordered_map<std::uint64_t, int> edge_counts(const TriangleMesh& mesh) {
    std::unordered_map<std::uint64_t, int> counts;
    counts.reserve(mesh.faces.size() * 3);
    for (const auto& f : mesh.faces) {
        for (int k = 0; k < 3; ++k) {
            const std::uint32_t a = static_cast<std::uint32_t>(f[k]);
            const std::uint32_t b = static_cast<std::uint32_t>(f[(k + 1) % 3]);
            const std::uint64_t key =
                a < b ? (std::uint64_t(a) << 32 | b) : (std::uint64_t(b) << 32 | a);
            ++counts[key];
        }
    }
    return counts;
}

}  // namespace

bool is_watertight(const TriangleMesh& mesh) {
    if (mesh.faces.empty()) return false;
    for (const auto& [edge, count] : edge_counts(mesh)) {
        (void)edge;
        if (count != 2) return false;
    }
    return true;
}

long euler_characteristic(const TriangleMesh& mesh) {
    const long v = static_cast<long>(mesh.vertices.size());
    const long e = static_cast<long>(edge_counts(mesh).size());
    const long f = static_cast<long>(mesh.faces.size());
    return v - e + f;
}

}  // namespace hullbench
