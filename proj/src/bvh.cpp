#include "hullbench/bvh.hpp"

#include <algorithm>
#include <numeric>

namespace hullbench {

namespace {
constexpr int kLeafSize = 4;

// Slab test; returns false when the box cannot contain a hit closer than t_max.
bool box_hit(const AABB& box, const Ray& ray, double t_max) {
    double t0 = 0.0, t1 = t_max;
    for (int axis = 0; axis < 3; ++axis) {
        const double d = ray.dir[axis];
        const double o = ray.origin[axis];
        if (d == 0.0) {
            if (o < box.min[axis] || o > box.max[axis]) return false;
            continue;
        }
        const double inv = 1.0 / d;
        double near = (box.min[axis] - o) * inv;
        double far = (box.max[axis] - o) * inv;
        if (inv < 0.0) std::swap(near, far);
        t0 = std::max(t0, near);
        t1 = std::min(t1, far);
        if (t0 > t1) return false;
    }
    return true;
}
}  // namespace

TriangleBvh::TriangleBvh(const TriangleMesh& mesh) {
    const std::size_t n = mesh.faces.size();
    triangles_.reserve(n);
    centroids_.reserve(n);
    for (std::size_t f = 0; f < n; ++f) {
        const auto& face = mesh.faces[f];
        const Vec3& a = mesh.vertices[face[0]];
        const Vec3& b = mesh.vertices[face[1]];
        const Vec3& c = mesh.vertices[face[2]];
        triangles_.push_back({a, b - a, c - a, static_cast<int>(f)});
        centroids_.push_back((a + b + c) / 3.0);
    }
    if (n == 0) return;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    nodes_.reserve(2 * n);
    build(order, 0, static_cast<int>(n));

    // Reorder triangles to leaf order so leaves are contiguous.
    std::vector<PackedTriangle> sorted;
    sorted.reserve(n);
    for (int idx : order) sorted.push_back(triangles_[idx]);
    triangles_ = std::move(sorted);
    centroids_.clear();
    centroids_.shrink_to_fit();
}

int TriangleBvh::build(std::vector<int>& order, int lo, int hi) {
    AABB box = AABB::empty();
    for (int i = lo; i < hi; ++i) {
        const auto& t = triangles_[order[i]];
        box.extend(t.a);
        box.extend(t.a + t.e1);
        box.extend(t.a + t.e2);
    }
    const int node_index = static_cast<int>(nodes_.size());
    nodes_.push_back({box, lo, hi - lo, -1});

    if (hi - lo <= kLeafSize) return node_index;

    AABB cbox = AABB::empty();
    for (int i = lo; i < hi; ++i) cbox.extend(centroids_[order[i]]);
    const Vec3 spread = cbox.extent();
    int axis = 0;
    if (spread.y > spread[axis]) axis = 1;
    if (spread.z > spread[axis]) axis = 2;
    if (spread[axis] <= 0.0) return node_index;  // all centroids coincide

    const int mid = lo + (hi - lo) / 2;
    std::nth_element(order.begin() + lo, order.begin() + mid, order.begin() + hi,
                     [&](int a, int b) {
                         const double ca = centroids_[a][axis], cb = centroids_[b][axis];
                         return ca < cb || (ca == cb && a < b);
                     });

    nodes_[node_index].count = 0;
    const int left = build(order, lo, mid);
    const int right = build(order, mid, hi);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
}

void TriangleBvh::intersect(int node_index, const Ray& ray, double t_min, Hit& best,
                            bool& found) const {
    const Node& node = nodes_[node_index];
    const double limit = found ? best.t : std::numeric_limits<double>::infinity();
    if (!box_hit(node.box, ray, limit)) return;

    if (node.count > 0) {
        for (int i = node.left; i < node.left + node.count; ++i) {
            const PackedTriangle& tri = triangles_[i];
            const Vec3 pvec = ray.dir.cross(tri.e2);
            const double det = tri.e1.dot(pvec);
            // Near-parallel rejection, scale-invariant.
            if (std::abs(det) <= 1e-9 * tri.e1.norm() * tri.e2.norm()) continue;
            const double inv_det = 1.0 / det;
            const Vec3 tvec = ray.origin - tri.a;
            const double u = tvec.dot(pvec) * inv_det;
            if (u < 0.0 || u > 1.0) continue;
            const Vec3 qvec = tvec.cross(tri.e1);
            const double v = ray.dir.dot(qvec) * inv_det;
            if (v < 0.0 || u + v > 1.0) continue;
            const double t = tri.e2.dot(qvec) * inv_det;
            if (t <= t_min) continue;
            if (!found || t < best.t || (t == best.t && tri.face < best.face)) {
                best = {t, tri.face, u, v};
                found = true;
            }
        }
        return;
    }
    intersect(node.left, ray, t_min, best, found);
    intersect(node.right, ray, t_min, best, found);
}

std::optional<TriangleBvh::Hit> TriangleBvh::raycast(const Ray& ray, double t_min) const {
    if (nodes_.empty()) return std::nullopt;
    Hit best;
    bool found = false;
    intersect(0, ray, t_min, best, found);
    if (!found) return std::nullopt;
    return best;
}

}  // namespace hullbench
