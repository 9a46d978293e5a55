#include "hullbench/render.hpp"

#include <set>
#include <stdexcept>

#include "hullbench/parallel.hpp"

namespace hullbench {

void validate_scene(const Scene& scene) {
    std::set<std::string> names;
    for (const auto& object : scene.objects) {
        if (object.name.empty())
            throw std::invalid_argument("scene object with empty name");
        if (!names.insert(object.name).second)
            throw std::invalid_argument("duplicate scene object name '" + object.name + "'");
    }
}

SceneRaycaster::SceneRaycaster(const Scene& scene) : scene_(&scene) {
    validate_scene(scene);
    for (const auto& object : scene.objects) {
        validate_mesh(object.mesh);
        bvhs_.push_back(std::make_unique<TriangleBvh>(object.mesh));
    }
}

std::optional<SceneRaycaster::Hit> SceneRaycaster::first_hit(const Ray& ray,
                                                             double t_min) const {
    std::optional<Hit> best;
    for (std::size_t obj = 0; obj < bvhs_.size(); ++obj) {
        const auto hit = bvhs_[obj]->raycast(ray, t_min);
        if (!hit) continue;
        // Equal-depth tie goes to the lower (object, face) pair; objects are
        // visited in order, so a strictly-smaller t is required to replace.
        if (!best || hit->t < best->t) {
            best = Hit{static_cast<int>(obj), hit->face, hit->t, hit->u, hit->v};
        }
    }
    return best;
}

RenderOutput render_with(const SceneRaycaster& raycaster, const Camera& camera) {
    const Scene& scene = raycaster.scene();
    if (scene.objects.empty())
        throw std::invalid_argument("render: scene has no objects");
    bool any_face = false;
    for (const auto& object : scene.objects) any_face |= !object.mesh.faces.empty();
    if (!any_face) throw std::invalid_argument("render: scene has no faces");

    const int w = camera.intrinsics.width;
    const int h = camera.intrinsics.height;

    RenderOutput out;
    out.rgb = ImageBuffer(w, h, 3);
    out.depth = ImageBuffer(w, h, 1);
    out.depth_values.assign(static_cast<std::size_t>(w) * h, 0.0);
    for (const auto& object : scene.objects)
        out.per_object_mask.emplace(object.name, BinaryMask(w, h));

    std::vector<BinaryMask*> masks;
    for (const auto& object : scene.objects)
        masks.push_back(&out.per_object_mask.at(object.name));

    const Vec3 cam_center = camera.center();
    const Mat3 world_from_cam = camera.R.transposed();
    const Vec3 light = camera.forward();  // directional light along the optical axis

    parallel_for(static_cast<std::size_t>(h), 8, [&](std::size_t row0, std::size_t row1) {
        for (std::size_t y = row0; y < row1; ++y) {
            for (int x = 0; x < w; ++x) {
                const double u = x + 0.5, v = static_cast<double>(y) + 0.5;
                const Vec3 dir_cam{(u - camera.intrinsics.cx) / camera.intrinsics.fx,
                                   (v - camera.intrinsics.cy) / camera.intrinsics.fy, 1.0};
                Ray ray;
                ray.origin = cam_center;
                ray.dir = (world_from_cam * dir_cam).normalized();

                const auto hit = raycaster.first_hit(ray);
                if (!hit) {
                    for (int c = 0; c < 3; ++c)
                        out.rgb.at(x, static_cast<int>(y), c) = scene.background[c];
                    continue;
                }

                const auto& mesh = scene.objects[hit->object].mesh;
                const auto& face = mesh.faces[hit->face];
                const Vec3& a = mesh.vertices[face[0]];
                const Vec3& b = mesh.vertices[face[1]];
                const Vec3& c3 = mesh.vertices[face[2]];

                double color[3] = {kDefaultAlbedo, kDefaultAlbedo, kDefaultAlbedo};
                if (mesh.has_colors()) {
                    const double bw = 1.0 - hit->u - hit->v;
                    for (int c = 0; c < 3; ++c)
                        color[c] = bw * mesh.vertex_colors[face[0]][c] +
                                   hit->u * mesh.vertex_colors[face[1]][c] +
                                   hit->v * mesh.vertex_colors[face[2]][c];
                }

                const Vec3 normal = (b - a).cross(c3 - a);
                const double nn = normal.norm();
                const double lambert = nn > 0.0 ? std::abs(normal.dot(light)) / nn : 0.0;
                const double shade = std::min(1.0, 0.2 + 0.8 * lambert);

                for (int c = 0; c < 3; ++c)
                    out.rgb.at(x, static_cast<int>(y), c) =
                        std::min(1.0, std::max(0.0, shade * color[c]));

                // Depth along the optical axis, not euclidean distance.
                const Vec3 p = ray.origin + ray.dir * hit->t;
                const double depth = (camera.R * p + camera.t).z;
                out.depth_values[y * w + x] = depth;
                masks[hit->object]->set(x, static_cast<int>(y), true);
            }
        }
    });

    double max_depth = 0.0;
    for (double d : out.depth_values) max_depth = std::max(max_depth, d);
    if (max_depth > 0.0) {
        for (std::size_t i = 0; i < out.depth_values.size(); ++i)
            out.depth.data[i] = out.depth_values[i] / max_depth;
    }
    return out;
}

RenderOutput render(const Scene& scene, const Camera& camera) {
    SceneRaycaster raycaster(scene);
    return render_with(raycaster, camera);
}

std::vector<RenderOutput> render_rig(const Scene& scene,
                                     const std::vector<Camera>& cameras) {
    SceneRaycaster raycaster(scene);
    std::vector<RenderOutput> outputs;
    outputs.reserve(cameras.size());
    for (std::size_t i = 0; i < cameras.size(); ++i) {
        try {
            outputs.push_back(render_with(raycaster, cameras[i]));
        } catch (const std::exception& e) {
            throw std::runtime_error("render_rig: camera " + std::to_string(i) + ": " +
                                     e.what());
        }
    }
    return outputs;
}

}  // namespace hullbench
