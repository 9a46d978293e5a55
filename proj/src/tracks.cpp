#include <stdexcept>

#include "hullbench/bvh.hpp"
#include "hullbench/reconstruct.hpp"
#include "hullbench/sampling.hpp"

namespace hullbench {

SparseTracks sample_tracks(const TriangleMesh& surface,
                           const std::vector<MaskView>& views, int n_candidates,
                           int min_views, std::uint64_t seed) {
    if (n_candidates < 1) throw std::invalid_argument("sample_tracks: n_candidates < 1");
    if (min_views < 2) throw std::invalid_argument("sample_tracks: min_views must be >= 2");

    const PointCloud candidates = sample_surface(surface, n_candidates, seed);
    const TriangleBvh bvh(surface);
    const double tolerance = 1e-6 * bounding_box(surface).diagonal();

    SparseTracks tracks;
    for (const Vec3& point : candidates.points) {
        std::vector<TrackObservation> observations;
        for (std::size_t v = 0; v < views.size(); ++v) {
            const auto& view = views[v];
            const auto proj = project(view.camera, point);
            if (!proj) continue;
            const int px = pixel_of(proj->u), py = pixel_of(proj->v);
            if (px < 0 || px >= view.mask.width || py < 0 || py >= view.mask.height)
                continue;
            if (!view.mask.get(px, py)) continue;

            // Occlusion test against the surface itself.
            const Vec3 origin = view.camera.center();
            const double distance = (point - origin).norm();
            Ray ray{origin, (point - origin) / distance};
            const auto hit = bvh.raycast(ray);
            if (hit && hit->t < distance - tolerance) continue;

            observations.push_back({static_cast<int>(v), proj->u, proj->v});
        }
        if (static_cast<int>(observations.size()) >= min_views) {
            tracks.points.points.push_back(point);
            tracks.per_point_observations.push_back(std::move(observations));
        }
    }
    return tracks;
}

}  // namespace hullbench
