#include "hullbench/reconstruct.hpp"

#include <stdexcept>

#include "hullbench/parallel.hpp"

namespace hullbench {

CarveResult carve(const std::vector<MaskView>& views, const AABB& bounds,
                  int resolution) {
    if (views.empty()) throw std::invalid_argument("carve: no views");
    if (resolution < 8) throw std::invalid_argument("carve: resolution must be >= 8");
    if (!bounds.valid() || !(bounds.diagonal() > 0.0))
        throw std::invalid_argument("carve: degenerate bounds");

    VoxelGrid grid = make_grid(bounds, resolution);
    std::vector<std::uint8_t> occupancy(grid.cell_count(), 1);

    const std::size_t slab = static_cast<std::size_t>(grid.nx) * grid.ny;
    parallel_for(static_cast<std::size_t>(grid.nz), 1, [&](std::size_t k0, std::size_t k1) {
        for (std::size_t k = k0; k < k1; ++k) {
            for (int j = 0; j < grid.ny; ++j) {
                for (int i = 0; i < grid.nx; ++i) {
                    const Vec3 center = grid.center(i, j, static_cast<int>(k));
                    bool alive = true;
                    for (const auto& view : views) {
                        const auto proj = project(view.camera, center);
                        if (!proj) continue;  // behind the camera: frustum misses it
                        const int px = pixel_of(proj->u);
                        const int py = pixel_of(proj->v);
                        if (px < 0 || px >= view.mask.width || py < 0 ||
                            py >= view.mask.height)
                            continue;  // outside the image: no constraint
                        if (!view.mask.get(px, py)) {
                            alive = false;
                            break;
                        }
                    }
                    if (!alive)
                        occupancy[k * slab + grid.index(i, j, 0)] = 0;
                }
            }
        }
    });

    for (std::size_t idx = 0; idx < occupancy.size(); ++idx)
        if (occupancy[idx]) grid.set(idx, true);

    CarveResult result;
    result.views_used = static_cast<int>(views.size());
    const std::size_t occupied = grid.count_occupied();
    result.carved_fraction =
        1.0 - static_cast<double>(occupied) / static_cast<double>(grid.cell_count());
    result.grid = std::move(grid);
    return result;
}

}  // namespace hullbench
