#include <doctest.h>

#include "hullbench/sampling.hpp"
#include "hullbench/spatial_index.hpp"

using namespace hullbench;

namespace {
PointCloud random_cloud(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    PointCloud cloud;
    for (std::size_t i = 0; i < n; ++i)
        cloud.points.push_back({rng.next_double() * 2 - 1, rng.next_double() * 2 - 1,
                                rng.next_double() * 2 - 1});
    return cloud;
}
}  // namespace

TEST_CASE("nearest neighbor matches the exhaustive scan exactly") {
    const PointCloud cloud = random_cloud(1000, 11);
    const SpatialIndex index(cloud);
    Rng rng(99);
    for (int q = 0; q < 300; ++q) {
        const Vec3 query{rng.next_double() * 3 - 1.5, rng.next_double() * 3 - 1.5,
                         rng.next_double() * 3 - 1.5};
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : cloud.points) best = std::min(best, (p - query).squared_norm());
        const auto result = index.nearest(query);
        CHECK(result.dist2 == best);  // exact tie-distance equality
        CHECK((cloud.points[result.index] - query).squared_norm() == best);
    }
}

TEST_CASE("equidistant ties resolve to the smallest point index") {
    PointCloud cloud;
    cloud.points = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {1, 0, 0}};
    const SpatialIndex index(cloud);
    // All five are at distance 1 from the origin.
    CHECK(index.nearest({0, 0, 0}).index == 0);

    PointCloud duplicates;
    duplicates.points = {{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}};
    const SpatialIndex dup_index(duplicates);
    CHECK(dup_index.nearest({0.4, 0.5, 0.5}).index == 0);
}

TEST_CASE("querying an indexed point returns distance zero") {
    const PointCloud cloud = random_cloud(128, 3);
    const SpatialIndex index(cloud);
    for (std::size_t i = 0; i < cloud.points.size(); i += 7) {
        const auto result = index.nearest(cloud.points[i]);
        CHECK(result.dist2 == 0.0);
    }
}

TEST_CASE("empty cloud is rejected") {
    CHECK_THROWS(SpatialIndex(PointCloud{}));
}
