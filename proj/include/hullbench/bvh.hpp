#pragma once

#include <optional>
#include <vector>

#include "hullbench/camera.hpp"
#include "hullbench/mesh.hpp"

namespace hullbench {

/// Median-split bounding-volume hierarchy over a triangle mesh.
/// Construction and traversal are deterministic; equal-depth hits are
/// resolved to the lower face index.
class TriangleBvh {
public:
    explicit TriangleBvh(const TriangleMesh& mesh);

    struct Hit {
        double t = 0.0;  // ray parameter (dir is unit length, so distance)
        int face = -1;
        double u = 0.0, v = 0.0;  // barycentric, p = a + u(b-a) + v(c-a)
    };

    /// Nearest intersection with t > t_min.
    std::optional<Hit> raycast(const Ray& ray, double t_min = 1e-12) const;

    const AABB& bounds() const { return nodes_.empty() ? empty_ : nodes_[0].box; }

private:
    struct Node {
        AABB box;
        int left = -1;    // internal: child index; leaf: first triangle
        int count = 0;    // leaf triangle count, 0 for internal nodes
        int right = -1;
    };

    struct PackedTriangle {
        Vec3 a, e1, e2;
        int face;
    };

    int build(std::vector<int>& order, int lo, int hi);
    void intersect(int node, const Ray& ray, double t_min, Hit& best, bool& found) const;

    std::vector<Node> nodes_;
    std::vector<PackedTriangle> triangles_;
    std::vector<Vec3> centroids_;
    AABB empty_ = AABB::empty();
};

}  // namespace hullbench
