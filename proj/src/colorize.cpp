#include <atomic>
#include <stdexcept>

#include "hullbench/bvh.hpp"
#include "hullbench/parallel.hpp"
#include "hullbench/reconstruct.hpp"

namespace hullbench {

ColorizeResult colorize(const TriangleMesh& mesh, const std::vector<MaskedView>& views,
                        const std::vector<Camera>& cameras, double depth_tolerance) {
    if (views.empty()) throw std::invalid_argument("colorize: no views");
    if (views.size() != cameras.size())
        throw std::invalid_argument("colorize: views/cameras length mismatch");

    ColorizeResult result;
    result.mesh = mesh;
    result.mesh.vertex_colors.assign(mesh.vertices.size(), {0.7, 0.7, 0.7});
    if (mesh.vertices.empty()) return result;

    const TriangleBvh bvh(mesh);
    std::vector<std::uint8_t> colored(mesh.vertices.size(), 0);

    parallel_for(mesh.vertices.size(), 256, [&](std::size_t begin, std::size_t end) {
        for (std::size_t vi = begin; vi < end; ++vi) {
            const Vec3& vertex = mesh.vertices[vi];
            double sum[3] = {0, 0, 0};
            int hits = 0;
            for (std::size_t v = 0; v < views.size(); ++v) {
                const auto& view = views[v];
                const auto proj = project(cameras[v], vertex);
                if (!proj) continue;
                const int px = pixel_of(proj->u), py = pixel_of(proj->v);
                if (px < 0 || px >= view.raw_mask.width || py < 0 ||
                    py >= view.raw_mask.height)
                    continue;
                // Sample object pixels only; the band between the raw and
                // padded mask still shows background.
                if (!view.raw_mask.get(px, py)) continue;

                const Vec3 origin = cameras[v].center();
                const double distance = (vertex - origin).norm();
                if (!(distance > 0.0)) continue;
                Ray ray{origin, (vertex - origin) / distance};
                const auto hit = bvh.raycast(ray);
                if (hit && hit->t < distance - depth_tolerance) continue;

                for (int c = 0; c < 3; ++c) sum[c] += view.rgb_masked.at(px, py, c);
                ++hits;
            }
            if (hits > 0) {
                for (int c = 0; c < 3; ++c)
                    result.mesh.vertex_colors[vi][c] = sum[c] / hits;
                colored[vi] = 1;
            }
        }
    });

    std::size_t uncolored = 0;
    for (std::uint8_t c : colored) uncolored += c ? 0 : 1;
    result.uncolored_fraction =
        static_cast<double>(uncolored) / static_cast<double>(mesh.vertices.size());
    return result;
}

}  // namespace hullbench
