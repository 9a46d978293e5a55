#include "hullbench/scenes.hpp"

#include <algorithm>
#include <cmath>

#include "hullbench/errors.hpp"
#include "hullbench/mesh_io.hpp"

namespace hullbench {

namespace {
constexpr double kPi = 3.14159265358979323846;

void fill_color(TriangleMesh& mesh, const std::optional<Rgb>& color) {
    if (color) mesh.vertex_colors.assign(mesh.vertices.size(), *color);
}
}  // namespace

TriangleMesh make_sphere(double radius, const Vec3& center, int stacks, int slices,
                         std::optional<Rgb> color) {
    TriangleMesh mesh;
    // Interior rings plus two pole vertices.
    for (int s = 1; s < stacks; ++s) {
        const double theta = kPi * s / stacks;
        for (int l = 0; l < slices; ++l) {
            const double phi = 2.0 * kPi * l / slices;
            mesh.vertices.push_back(center + radius * Vec3{std::sin(theta) * std::cos(phi),
                                                           std::sin(theta) * std::sin(phi),
                                                           std::cos(theta)});
        }
    }
    const int north = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(center + Vec3{0, 0, radius});
    const int south = north + 1;
    mesh.vertices.push_back(center + Vec3{0, 0, -radius});

    auto ring = [&](int s, int l) { return (s - 1) * slices + (l % slices); };
    for (int l = 0; l < slices; ++l) {
        mesh.faces.push_back({north, ring(1, l), ring(1, l + 1)});
        mesh.faces.push_back({south, ring(stacks - 1, l + 1), ring(stacks - 1, l)});
    }
    for (int s = 1; s < stacks - 1; ++s) {
        for (int l = 0; l < slices; ++l) {
            const int a = ring(s, l), b = ring(s, l + 1);
            const int c = ring(s + 1, l), d = ring(s + 1, l + 1);
            mesh.faces.push_back({a, c, d});
            mesh.faces.push_back({a, d, b});
        }
    }
    fill_color(mesh, color);
    return mesh;
}

TriangleMesh make_box(const Vec3& mn, const Vec3& mx, std::optional<Rgb> color) {
    TriangleMesh mesh;
    for (int corner = 0; corner < 8; ++corner) {
        mesh.vertices.push_back({corner & 1 ? mx.x : mn.x, corner & 2 ? mx.y : mn.y,
                                 corner & 4 ? mx.z : mn.z});
    }
    const int quads[6][4] = {
        {0, 2, 3, 1},  // z = min
        {4, 5, 7, 6},  // z = max
        {0, 1, 5, 4},  // y = min
        {2, 6, 7, 3},  // y = max
        {0, 4, 6, 2},  // x = min
        {1, 3, 7, 5},  // x = max
    };
    for (const auto& q : quads) {
        mesh.faces.push_back({q[0], q[1], q[2]});
        mesh.faces.push_back({q[0], q[2], q[3]});
    }
    fill_color(mesh, color);
    return mesh;
}

TriangleMesh make_cylinder_x(double x0, double x1, double radius, double y, double z,
                             int segments, std::optional<Rgb> color) {
    TriangleMesh mesh;
    for (int s = 0; s < segments; ++s) {
        const double angle = 2.0 * kPi * s / segments;
        const double cy = y + radius * std::cos(angle);
        const double cz = z + radius * std::sin(angle);
        mesh.vertices.push_back({x0, cy, cz});
        mesh.vertices.push_back({x1, cy, cz});
    }
    const int cap0 = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back({x0, y, z});
    const int cap1 = cap0 + 1;
    mesh.vertices.push_back({x1, y, z});

    for (int s = 0; s < segments; ++s) {
        const int a0 = 2 * s, a1 = 2 * s + 1;
        const int b0 = 2 * ((s + 1) % segments), b1 = b0 + 1;
        mesh.faces.push_back({a0, b0, b1});
        mesh.faces.push_back({a0, b1, a1});
        mesh.faces.push_back({cap0, b0, a0});
        mesh.faces.push_back({cap1, a1, b1});
    }
    fill_color(mesh, color);
    return mesh;
}

TriangleMesh make_cylinder_y(double y0, double y1, double radius, double x, double z,
                             int segments, std::optional<Rgb> color) {
    TriangleMesh mesh = make_cylinder_x(y0, y1, radius, x, z, segments, std::nullopt);
    // Swap x and y; reversing each face restores orientation after the
    // reflection.
    for (auto& v : mesh.vertices) std::swap(v.x, v.y);
    for (auto& f : mesh.faces) std::swap(f[1], f[2]);
    fill_color(mesh, color);
    return mesh;
}

TriangleMesh make_frustum_z(double z0, double hw0, double z1, double hw1,
                            std::optional<Rgb> color) {
    TriangleMesh mesh;
    const double level[2] = {z0, z1};
    const double half[2] = {hw0, hw1};
    for (int l = 0; l < 2; ++l) {
        mesh.vertices.push_back({-half[l], -half[l], level[l]});
        mesh.vertices.push_back({half[l], -half[l], level[l]});
        mesh.vertices.push_back({half[l], half[l], level[l]});
        mesh.vertices.push_back({-half[l], half[l], level[l]});
    }
    const int quads[6][4] = {
        {0, 3, 2, 1},  // bottom
        {4, 5, 6, 7},  // top
        {0, 1, 5, 4},
        {1, 2, 6, 5},
        {2, 3, 7, 6},
        {3, 0, 4, 7},
    };
    for (const auto& q : quads) {
        mesh.faces.push_back({q[0], q[1], q[2]});
        mesh.faces.push_back({q[0], q[2], q[3]});
    }
    fill_color(mesh, color);
    return mesh;
}

TriangleMesh make_slab_with_hole(double half_width, double z0, double z1,
                                 double hole_x, double hole_y, double hole_radius,
                                 int segments, std::optional<Rgb> color) {
    TriangleMesh mesh;
    // One boundary sample per angle, on the circle and on the square; the
    // annulus between them is a ring of quads.
    std::vector<int> circle_top(segments), square_top(segments);
    std::vector<int> circle_bot(segments), square_bot(segments);
    for (int s = 0; s < segments; ++s) {
        const double angle = 2.0 * kPi * s / segments;
        const double ca = std::cos(angle), sa = std::sin(angle);
        const double cx = hole_x + hole_radius * ca;
        const double cy = hole_y + hole_radius * sa;
        const double r = half_width / std::max(std::abs(ca), std::abs(sa));
        const double sx = r * ca, sy = r * sa;
        circle_top[s] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back({cx, cy, z1});
        square_top[s] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back({sx, sy, z1});
        circle_bot[s] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back({cx, cy, z0});
        square_bot[s] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back({sx, sy, z0});
    }
    for (int s = 0; s < segments; ++s) {
        const int t = (s + 1) % segments;
        // top annulus
        mesh.faces.push_back({square_top[s], square_top[t], circle_top[t]});
        mesh.faces.push_back({square_top[s], circle_top[t], circle_top[s]});
        // bottom annulus
        mesh.faces.push_back({square_bot[s], circle_bot[t], square_bot[t]});
        mesh.faces.push_back({square_bot[s], circle_bot[s], circle_bot[t]});
        // outer wall
        mesh.faces.push_back({square_top[s], square_bot[s], square_bot[t]});
        mesh.faces.push_back({square_top[s], square_bot[t], square_top[t]});
        // hole wall
        mesh.faces.push_back({circle_top[s], circle_bot[t], circle_bot[s]});
        mesh.faces.push_back({circle_top[s], circle_top[t], circle_bot[t]});
    }
    fill_color(mesh, color);
    return mesh;
}

TriangleMesh make_figurine() {
    const Rgb red{0.85, 0.25, 0.2};
    const Rgb blue{0.2, 0.3, 0.85};

    // Flat slab with an offset vertical through-hole. Rays from a 45-degree
    // ring thread the hole (its diameter well exceeds the slab thickness),
    // while near-horizontal rays cannot, so elevated rings carve this object
    // strictly tighter.
    TriangleMesh body = make_slab_with_hole(0.45, -0.09, 0.09, -0.04, 0.0, 0.30, 32, blue);
    // Box head on one edge of the top face; base is coplanar with the top.
    TriangleMesh head = make_box({0.25, -0.1, 0.09}, {0.45, 0.1, 0.29}, red);
    // Cylinder tail out of the -y wall; its cap is coplanar with the wall.
    TriangleMesh tail = make_cylinder_y(-0.78, -0.45, 0.07, 0.05, 0.0, 24, blue);

    TriangleMesh figurine = body;
    figurine.append(head);
    figurine.append(tail);

    // Two-tone: everything above the mid-plane red, below blue.
    figurine.vertex_colors.resize(figurine.vertices.size());
    for (std::size_t i = 0; i < figurine.vertices.size(); ++i)
        figurine.vertex_colors[i] = figurine.vertices[i].z >= 0.0 ? red : blue;
    return figurine;
}

TriangleMesh builtin_mesh(const std::string& name) {
    if (name == "sphere") return make_sphere(0.5, {0, 0, 0}, 48, 96, Rgb{0.8, 0.35, 0.3});
    if (name == "cube") return make_box({-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}, Rgb{0.35, 0.7, 0.4});
    if (name == "figurine") return make_figurine();
    if (name == "two_tone_sphere") {
        TriangleMesh sphere = make_sphere(0.5, {0, 0, 0}, 48, 96);
        sphere.vertex_colors.resize(sphere.vertices.size());
        for (std::size_t i = 0; i < sphere.vertices.size(); ++i) {
            sphere.vertex_colors[i] = sphere.vertices[i].z >= 0.0 ? Rgb{0.85, 0.15, 0.15}
                                                                  : Rgb{0.15, 0.15, 0.85};
        }
        return sphere;
    }
    throw ConfigError("unknown builtin mesh '" + name +
                      "' (have: sphere, cube, figurine, two_tone_sphere)");
}

TriangleMesh resolve_mesh_source(const std::string& source) {
    constexpr const char* kPrefix = "builtin:";
    if (source.rfind(kPrefix, 0) == 0) return builtin_mesh(source.substr(8));
    return load_mesh(source);
}

Scene builtin_scene(const std::string& name) {
    Scene scene;
    scene.objects.push_back({name, builtin_mesh(name)});
    return scene;
}

}  // namespace hullbench
