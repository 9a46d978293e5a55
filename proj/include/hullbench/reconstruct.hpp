#pragma once

#include <cstdint>
#include <vector>

#include "hullbench/camera.hpp"
#include "hullbench/image.hpp"
#include "hullbench/mesh.hpp"
#include "hullbench/segment.hpp"
#include "hullbench/voxel.hpp"

namespace hullbench {

struct MaskView {
    BinaryMask mask;
    Camera camera;
};

struct CarveResult {
    VoxelGrid grid;
    int views_used = 0;
    double carved_fraction = 0.0;  // 1 - occupied/total
};

/// Visual-hull voxel carving: starting from a fully occupied grid over
/// `bounds`, a voxel survives iff its center projects to a mask-true pixel
/// in every view whose frustum contains it. Voxels seen by no view survive.
CarveResult carve(const std::vector<MaskView>& views, const AABB& bounds,
                  int resolution);

struct TrackObservation {
    int camera_index = -1;
    double u = 0.0, v = 0.0;
};

struct SparseTracks {
    PointCloud points;
    std::vector<std::vector<TrackObservation>> per_point_observations;
};

/// Samples candidate points on the surface and keeps those visible
/// (unoccluded, mask-true, in frustum) in at least min_views views.
SparseTracks sample_tracks(const TriangleMesh& surface,
                           const std::vector<MaskView>& views, int n_candidates,
                           int min_views, std::uint64_t seed);

/// Marching cubes over the occupancy field sampled at voxel centers
/// (occupied = 1, empty = 0), linearly interpolated at `iso`. The grid is
/// padded by one empty sample layer internally, so the surface is closed.
/// Throws "nothing to extract" on an all-empty grid.
TriangleMesh extract_mesh(const VoxelGrid& grid, double iso = 0.5);

struct ColorizeResult {
    TriangleMesh mesh;
    double uncolored_fraction = 0.0;
};

namespace detail {
/// The marching-cubes triangulation actually used for a corner configuration
/// (classic entry, or the rule-derived repair). Exposed for table tests.
/// Vertex ids 0..11 are cube-edge crossings, 12+ are interior loop centroids.
std::vector<int> mc_table_entry(int config);
}  // namespace detail

/// Averages, per vertex, the masked RGB over views where the vertex is
/// visible (depth-tested against the mesh itself with `depth_tolerance`).
/// Vertices visible nowhere get mid-gray (0.7) and are counted.
ColorizeResult colorize(const TriangleMesh& mesh, const std::vector<MaskedView>& views,
                        const std::vector<Camera>& cameras, double depth_tolerance);

}  // namespace hullbench
