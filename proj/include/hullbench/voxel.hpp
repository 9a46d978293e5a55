#pragma once

#include <cstdint>
#include <vector>

#include "hullbench/mesh.hpp"

namespace hullbench {

/// Axis-aligned occupancy lattice with cubical cells.
struct VoxelGrid {
    Vec3 origin{0, 0, 0};
    double cell_size = 1.0;
    int nx = 0, ny = 0, nz = 0;
    std::vector<std::uint64_t> bits;

    std::size_t cell_count() const {
        return static_cast<std::size_t>(nx) * ny * nz;
    }
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(nx) * (static_cast<std::size_t>(j) +
                                               static_cast<std::size_t>(ny) * k);
    }
    bool occupied(std::size_t idx) const {
        return (bits[idx >> 6] >> (idx & 63)) & 1u;
    }
    bool occupied(int i, int j, int k) const { return occupied(index(i, j, k)); }
    void set(std::size_t idx, bool value) {
        const std::uint64_t mask = std::uint64_t(1) << (idx & 63);
        if (value) bits[idx >> 6] |= mask;
        else bits[idx >> 6] &= ~mask;
    }
    Vec3 center(int i, int j, int k) const {
        return origin + Vec3{(i + 0.5) * cell_size, (j + 0.5) * cell_size,
                             (k + 0.5) * cell_size};
    }
    std::size_t count_occupied() const;
    double occupied_volume() const {
        return count_occupied() * cell_size * cell_size * cell_size;
    }
};

/// Builds an empty grid covering `bounds`: the longest axis is divided into
/// `resolution` cubical cells, the other axes take as many cells as needed
/// to span their extent.
VoxelGrid make_grid(const AABB& bounds, int resolution);

/// Occupancy by the parity of +x ray crossings from each voxel center.
/// Edge-grazing rows are re-cast with a deterministic jitter of
/// 1e-7 * cell_size, at most 3 retries, then treated as outside.
VoxelGrid voxelize(const TriangleMesh& mesh, int resolution, const AABB& bounds);

}  // namespace hullbench
