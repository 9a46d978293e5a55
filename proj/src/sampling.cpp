#include "hullbench/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hullbench {

PointCloud sample_surface(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_surface: n must be >= 1");
    if (mesh.faces.empty()) throw std::invalid_argument("sample_surface: mesh has no faces");

    std::vector<double> cumulative(mesh.faces.size());
    double total = 0.0;
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& face = mesh.faces[f];
        total += triangle_area(mesh.vertices[face[0]], mesh.vertices[face[1]],
                               mesh.vertices[face[2]]);
        cumulative[f] = total;
    }
    if (!(total > 0.0))
        throw std::invalid_argument("sample_surface: mesh has zero surface area");

    Rng rng(seed);
    PointCloud cloud;
    cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rng.next_double() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        const std::size_t f = std::min<std::size_t>(
            static_cast<std::size_t>(it - cumulative.begin()), mesh.faces.size() - 1);
        const auto& face = mesh.faces[f];
        const Vec3& a = mesh.vertices[face[0]];
        const Vec3& b = mesh.vertices[face[1]];
        const Vec3& c = mesh.vertices[face[2]];
        double u = rng.next_double();
        double v = rng.next_double();
        if (u + v > 1.0) {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        cloud.points.push_back(a + (b - a) * u + (c - a) * v);
    }
    return cloud;
}

}  // namespace hullbench
