#include "hullbench/spatial_index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hullbench {

SpatialIndex::SpatialIndex(const PointCloud& cloud) : points_(cloud.points) {
    if (points_.empty())
        throw std::invalid_argument("SpatialIndex requires a non-empty cloud");
    for (const auto& p : points_)
        if (!p.finite())
            throw std::invalid_argument("SpatialIndex: non-finite point");
    std::vector<int> order(points_.size());
    std::iota(order.begin(), order.end(), 0);
    nodes_.reserve(points_.size());
    root_ = build(order, 0, static_cast<int>(order.size()));
}

int SpatialIndex::build(std::vector<int>& order, int lo, int hi) {
    if (lo >= hi) return -1;

    Vec3 mn = points_[order[lo]], mx = mn;
    for (int i = lo + 1; i < hi; ++i) {
        mn = min(mn, points_[order[i]]);
        mx = max(mx, points_[order[i]]);
    }
    const Vec3 spread = mx - mn;
    int axis = 0;
    if (spread.y > spread[axis]) axis = 1;
    if (spread.z > spread[axis]) axis = 2;

    const int mid = lo + (hi - lo) / 2;
    // Total order (coordinate, index) keeps the partition deterministic.
    std::nth_element(order.begin() + lo, order.begin() + mid, order.begin() + hi,
                     [&](int a, int b) {
                         const double ca = points_[a][axis], cb = points_[b][axis];
                         return ca < cb || (ca == cb && a < b);
                     });

    const int node_index = static_cast<int>(nodes_.size());
    nodes_.push_back({order[mid], axis, -1, -1});
    const int left = build(order, lo, mid);
    const int right = build(order, mid + 1, hi);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
}

void SpatialIndex::search(int node_index, const Vec3& query, Result& best) const {
    if (node_index < 0) return;
    const Node& node = nodes_[node_index];
    const Vec3& p = points_[node.point];

    const double d2 = (p - query).squared_norm();
    if (d2 < best.dist2 || (d2 == best.dist2 && node.point < best.index)) {
        best = {node.point, p, d2};
    }

    const double delta = query[node.axis] - p[node.axis];
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    search(near, query, best);
    // <= keeps equal-distance subtrees reachable so index tie-breaking is exact.
    if (delta * delta <= best.dist2) search(far, query, best);
}

SpatialIndex::Result SpatialIndex::nearest(const Vec3& query) const {
    Result best;
    best.dist2 = std::numeric_limits<double>::infinity();
    search(root_, query, best);
    return best;
}

}  // namespace hullbench
