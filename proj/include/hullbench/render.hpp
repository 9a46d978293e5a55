#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hullbench/bvh.hpp"
#include "hullbench/camera.hpp"
#include "hullbench/image.hpp"
#include "hullbench/mesh.hpp"

namespace hullbench {

struct Scene {
    struct Object {
        std::string name;
        TriangleMesh mesh;
    };
    std::vector<Object> objects;
    std::array<double, 3> background{0.0, 0.0, 0.0};
};

/// Throws unless object names are unique and non-empty.
void validate_scene(const Scene& scene);

struct RenderOutput {
    ImageBuffer rgb;                    // 3 channels
    ImageBuffer depth;                  // 1 channel, per-image normalized, 0 = no hit
    std::vector<double> depth_values;   // raw optical-axis depth, 0 = no hit
    std::map<std::string, BinaryMask> per_object_mask;
};

/// Shared raycasting state for a scene: one BVH per object, first-hit
/// queries with deterministic (object, face) tie-breaking.
class SceneRaycaster {
public:
    explicit SceneRaycaster(const Scene& scene);

    struct Hit {
        int object = -1;
        int face = -1;
        double t = 0.0;
        double u = 0.0, v = 0.0;
    };
    std::optional<Hit> first_hit(const Ray& ray, double t_min = 1e-12) const;

    const Scene& scene() const { return *scene_; }

private:
    const Scene* scene_;
    std::vector<std::unique_ptr<TriangleBvh>> bvhs_;
};

/// One primary ray per pixel center, nearest hit wins, Lambertian shading
/// lit along the optical axis (0.2 ambient + 0.8 diffuse). Deterministic
/// bit-for-bit for identical inputs and any worker count.
RenderOutput render(const Scene& scene, const Camera& camera);

/// Element-wise render in camera order; render errors gain the camera index.
std::vector<RenderOutput> render_rig(const Scene& scene,
                                     const std::vector<Camera>& cameras);

/// render() against a prebuilt raycaster (avoids per-view BVH rebuilds).
RenderOutput render_with(const SceneRaycaster& raycaster, const Camera& camera);

constexpr double kDefaultAlbedo = 0.7;

}  // namespace hullbench
