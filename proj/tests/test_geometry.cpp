#include <doctest.h>

#include "hullbench/mesh.hpp"
#include "hullbench/sampling.hpp"
#include "hullbench/scenes.hpp"

using namespace hullbench;

namespace {
TriangleMesh random_mesh(std::size_t n_vertices, std::uint64_t seed) {
    Rng rng(seed);
    TriangleMesh mesh;
    for (std::size_t i = 0; i < n_vertices; ++i)
        mesh.vertices.push_back({rng.next_double() * 10 - 5, rng.next_double() * 4 - 1,
                                 rng.next_double() * 7 + 2});
    const int n = static_cast<int>(n_vertices);
    for (std::size_t f = 0; f + 3 < n_vertices; f += 3)
        mesh.faces.push_back({static_cast<int>(f), static_cast<int>(f + 1) % n,
                              static_cast<int>(f + 2) % n});
    return mesh;
}
}  // namespace

TEST_CASE("bounding box of unit cube and single vertex") {
    const TriangleMesh cube = make_box({0, 0, 0}, {1, 1, 1});
    const AABB box = bounding_box(cube);
    CHECK(box.min == Vec3{0, 0, 0});
    CHECK(box.max == Vec3{1, 1, 1});

    TriangleMesh point;
    point.vertices.push_back({2, 3, 4});
    const AABB single = bounding_box(point);
    CHECK(single.min == Vec3{2, 3, 4});
    CHECK(single.max == Vec3{2, 3, 4});

    CHECK_THROWS(bounding_box(TriangleMesh{}));
}

TEST_CASE("bounding box equals exhaustive extrema on random vertices") {
    const TriangleMesh mesh = random_mesh(1000, 42);
    const AABB box = bounding_box(mesh);
    Vec3 mn = mesh.vertices[0], mx = mesh.vertices[0];
    for (const auto& v : mesh.vertices) {
        mn = min(mn, v);
        mx = max(mx, v);
    }
    CHECK(box.min == mn);
    CHECK(box.max == mx);
}

TEST_CASE("normalize_to_unit maps the unit cube to diagonal 1 at the origin") {
    const TriangleMesh cube = make_box({0, 0, 0}, {1, 1, 1});
    const NormalizeResult result = normalize_to_unit(cube);
    const AABB box = bounding_box(result.mesh);
    CHECK(box.diagonal() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(box.center().norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(result.transform.scale == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("normalize_to_unit is idempotent and invertible") {
    const TriangleMesh mesh = random_mesh(200, 7);
    const NormalizeResult once = normalize_to_unit(mesh);
    const NormalizeResult twice = normalize_to_unit(once.mesh);
    CHECK(std::abs(twice.transform.scale - 1.0) < 1e-9);
    CHECK(twice.transform.offset.norm() < 1e-9);

    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec3 recovered = once.transform.invert(once.mesh.vertices[i]);
        CHECK(std::abs(recovered.x - mesh.vertices[i].x) < 1e-9);
        CHECK(std::abs(recovered.y - mesh.vertices[i].y) < 1e-9);
        CHECK(std::abs(recovered.z - mesh.vertices[i].z) < 1e-9);
    }
}

TEST_CASE("normalize_to_unit rejects a degenerate box") {
    TriangleMesh flat;
    flat.vertices = {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    flat.faces = {{0, 1, 2}};
    CHECK_THROWS(normalize_to_unit(flat));
}

TEST_CASE("validate_mesh names the offending face") {
    TriangleMesh bad;
    bad.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    bad.faces = {{0, 1, 5}};
    CHECK_THROWS_WITH_AS(validate_mesh(bad), doctest::Contains("face 0"),
                         std::invalid_argument);

    bad.faces = {{0, 1, 1}};
    CHECK_THROWS_WITH_AS(validate_mesh(bad), doctest::Contains("degenerate"),
                         std::invalid_argument);
}

TEST_CASE("closed primitives are watertight with euler characteristic 2") {
    for (const char* name : {"sphere", "cube"}) {
        const TriangleMesh mesh = builtin_mesh(name);
        CAPTURE(name);
        CHECK(is_watertight(mesh));
        CHECK(euler_characteristic(mesh) == 2);
    }
}
