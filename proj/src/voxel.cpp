#include "hullbench/voxel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "hullbench/parallel.hpp"

namespace hullbench {

std::size_t VoxelGrid::count_occupied() const {
    std::size_t count = 0;
    for (std::uint64_t word : bits) count += std::popcount(word);
    return count;
}

VoxelGrid make_grid(const AABB& bounds, int resolution) {
    if (!bounds.valid())
        throw std::invalid_argument("voxel grid bounds are not finite/ordered");
    const Vec3 extent = bounds.extent();
    const double longest = std::max({extent.x, extent.y, extent.z});
    if (!(longest > 0.0))
        throw std::invalid_argument("voxel grid bounds have zero extent");
    VoxelGrid grid;
    grid.origin = bounds.min;
    grid.cell_size = longest / resolution;
    auto cells = [&](double e) {
        return std::max(1, static_cast<int>(std::ceil(e / grid.cell_size - 1e-9)));
    };
    grid.nx = cells(extent.x);
    grid.ny = cells(extent.y);
    grid.nz = cells(extent.z);
    grid.bits.assign((grid.cell_count() + 63) / 64, 0);
    return grid;
}

namespace {

struct RowCast {
    std::vector<double> crossings;
    bool grazing = false;
};

// Crossings of the +x line at (y, z) with one triangle. Appends the crossing
// x when the point is strictly interior to the (y,z) projection; flags
// grazing when the point passes within `band` of an edge or an edge-on
// triangle. The band is much tighter than the jitter step, so a single
// re-cast clears it even when the mesh is lattice-aligned (marching-cubes
// output puts vertices exactly on the row lines of a same-bounds grid).
void intersect_triangle(const Vec3& a, const Vec3& b, const Vec3& c, double y,
                        double z, double band, RowCast& row) {
    const double e1y = b.y - a.y, e1z = b.z - a.z;
    const double e2y = c.y - a.y, e2z = c.z - a.z;
    const double py = y - a.y, pz = z - a.z;
    const double det = e1y * e2z - e2y * e1z;

    const double len1 = std::hypot(e1y, e1z);
    const double len2 = std::hypot(e2y, e2z);

    auto near_segment = [&](double ax, double az, double bx, double bz) {
        const double dx = bx - ax, dz = bz - az;
        const double len2d = dx * dx + dz * dz;
        double t = 0.0;
        if (len2d > 0.0) t = std::clamp(((y - ax) * dx + (z - az) * dz) / len2d, 0.0, 1.0);
        const double qx = ax + t * dx - y, qz = az + t * dz - z;
        return qx * qx + qz * qz < band * band;
    };

    if (std::abs(det) <= band * (len1 + len2)) {
        // Edge-on to the ray; only matters if the point grazes the projection.
        if (near_segment(a.y, a.z, b.y, b.z) || near_segment(b.y, b.z, c.y, c.z) ||
            near_segment(c.y, c.z, a.y, a.z))
            row.grazing = true;
        return;
    }

    const double u = (py * e2z - e2y * pz) / det;
    const double v = (e1y * pz - py * e1z) / det;
    const double w = 1.0 - u - v;

    const bool inside = u > 0.0 && v > 0.0 && w > 0.0;
    const bool near_boundary = near_segment(a.y, a.z, b.y, b.z) ||
                               near_segment(b.y, b.z, c.y, c.z) ||
                               near_segment(c.y, c.z, a.y, a.z);
    if (near_boundary) {
        row.grazing = true;
        return;
    }
    if (inside) row.crossings.push_back(a.x + u * (b.x - a.x) + v * (c.x - a.x));
}

}  // namespace

VoxelGrid voxelize(const TriangleMesh& mesh, int resolution, const AABB& bounds) {
    if (resolution < 2) throw std::invalid_argument("voxelize: resolution must be >= 2");
    VoxelGrid grid = make_grid(bounds, resolution);
    if (mesh.faces.empty()) return grid;

    const double cell = grid.cell_size;
    const double eps = 1e-7 * cell;   // jitter step for grazing re-casts
    const double band = 1e-3 * eps;   // degeneracy detection width

    // Bin triangles over the (y, z) row lattice.
    const int ny = grid.ny, nz = grid.nz;
    std::vector<std::vector<int>> bins(static_cast<std::size_t>(ny) * nz);
    auto bin_of = [&](double y, int n, double org) {
        return std::clamp(static_cast<int>(std::floor((y - org) / cell)), 0, n - 1);
    };
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& face = mesh.faces[f];
        const Vec3& a = mesh.vertices[face[0]];
        const Vec3& b = mesh.vertices[face[1]];
        const Vec3& c = mesh.vertices[face[2]];
        const double pad = 8.0 * eps;
        const double y0 = std::min({a.y, b.y, c.y}) - pad;
        const double y1 = std::max({a.y, b.y, c.y}) + pad;
        const double z0 = std::min({a.z, b.z, c.z}) - pad;
        const double z1 = std::max({a.z, b.z, c.z}) + pad;
        if (y1 < grid.origin.y || z1 < grid.origin.z) continue;
        if (y0 > grid.origin.y + ny * cell || z0 > grid.origin.z + nz * cell) continue;
        const int jy0 = bin_of(y0, ny, grid.origin.y), jy1 = bin_of(y1, ny, grid.origin.y);
        const int jz0 = bin_of(z0, nz, grid.origin.z), jz1 = bin_of(z1, nz, grid.origin.z);
        for (int k = jz0; k <= jz1; ++k)
            for (int j = jy0; j <= jy1; ++j)
                bins[static_cast<std::size_t>(k) * ny + j].push_back(static_cast<int>(f));
    }

    // Deterministic jitter directions for the (up to 3) retries.
    static constexpr double kJitter[4][2] = {
        {0.0, 0.0}, {1.0, 0.7}, {-0.63, 1.37}, {2.11, -1.53}};

    std::vector<std::uint8_t> occupancy(grid.cell_count(), 0);
    const std::size_t n_rows = static_cast<std::size_t>(ny) * nz;

    parallel_for(n_rows, 64, [&](std::size_t begin, std::size_t end) {
        std::vector<double> xs;
        for (std::size_t row_idx = begin; row_idx < end; ++row_idx) {
            const int k = static_cast<int>(row_idx / ny);
            const int j = static_cast<int>(row_idx % ny);
            const auto& candidates = bins[row_idx];
            if (candidates.empty()) continue;

            const double yc = grid.origin.y + (j + 0.5) * cell;
            const double zc = grid.origin.z + (k + 0.5) * cell;

            bool resolved = false;
            for (int attempt = 0; attempt < 4 && !resolved; ++attempt) {
                RowCast cast;
                const double y = yc + eps * kJitter[attempt][0];
                const double z = zc + eps * kJitter[attempt][1];
                for (int f : candidates) {
                    const auto& face = mesh.faces[f];
                    intersect_triangle(mesh.vertices[face[0]], mesh.vertices[face[1]],
                                       mesh.vertices[face[2]], y, z, band, cast);
                    if (cast.grazing) break;
                }
                if (cast.grazing) continue;
                resolved = true;
                xs = std::move(cast.crossings);
            }
            if (!resolved) continue;  // treated as outside
            if (xs.empty()) continue;

            std::sort(xs.begin(), xs.end());
            std::size_t ahead = 0;  // crossings with x <= center so far
            for (int i = 0; i < grid.nx; ++i) {
                const double cx = grid.origin.x + (i + 0.5) * cell;
                while (ahead < xs.size() && xs[ahead] <= cx) ++ahead;
                if ((xs.size() - ahead) & 1)
                    occupancy[grid.index(i, j, k)] = 1;
            }
        }
    });

    for (std::size_t idx = 0; idx < occupancy.size(); ++idx)
        if (occupancy[idx]) grid.set(idx, true);
    return grid;
}

}  // namespace hullbench
