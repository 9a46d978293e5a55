#pragma once

#include <vector>

#include "hullbench/mesh.hpp"

namespace hullbench {

/// Balanced k-d tree over a point cloud. nearest() returns a point whose
/// distance to the query equals the exhaustive minimum; among equidistant
/// points the smallest index wins.
class SpatialIndex {
public:
    explicit SpatialIndex(const PointCloud& cloud);

    struct Result {
        int index = -1;
        Vec3 point;
        double dist2 = 0.0;
    };

    Result nearest(const Vec3& query) const;
    std::size_t size() const { return points_.size(); }

private:
    struct Node {
        int point = -1;   // index into points_
        int axis = 0;
        int left = -1;
        int right = -1;
    };

    int build(std::vector<int>& order, int lo, int hi);
    void search(int node, const Vec3& query, Result& best) const;

    std::vector<Vec3> points_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace hullbench
