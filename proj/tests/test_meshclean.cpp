#include <doctest.h>

#include <numeric>

#include "hullbench/meshclean.hpp"
#include "hullbench/sampling.hpp"
#include "hullbench/scenes.hpp"

using namespace hullbench;

namespace {

TriangleMesh tetrahedron(const Vec3& offset) {
    TriangleMesh mesh;
    mesh.vertices = {offset + Vec3{0, 0, 0}, offset + Vec3{1, 0, 0},
                     offset + Vec3{0, 1, 0}, offset + Vec3{0, 0, 1}};
    mesh.faces = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    return mesh;
}

// Quadratic union-find over face pairs sharing a vertex.
std::vector<std::vector<int>> quadratic_components(const TriangleMesh& mesh) {
    const int n = static_cast<int>(mesh.faces.size());
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x];
        return x;
    };
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            bool shared = false;
            for (int i : mesh.faces[a])
                for (int j : mesh.faces[b]) shared = shared || i == j;
            if (shared) {
                const int ra = find(a), rb = find(b);
                if (ra != rb) root[std::max(ra, rb)] = std::min(ra, rb);
            }
        }
    }
    std::vector<std::vector<int>> components;
    std::vector<int> slot(n, -1);
    for (int f = 0; f < n; ++f) {
        const int r = find(f);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(components.size());
            components.emplace_back();
        }
        components[slot[r]].push_back(f);
    }
    return components;
}

}  // namespace

TEST_CASE("connected components: one and two tetrahedra") {
    const TriangleMesh single = tetrahedron({0, 0, 0});
    CHECK(connected_components(single).size() == 1);

    TriangleMesh pair = single;
    pair.append(tetrahedron({5, 0, 0}));
    const auto components = connected_components(pair);
    REQUIRE(components.size() == 2);
    CHECK(components[0].size() == 4);
    CHECK(components[1].size() == 4);
    CHECK(components[0][0] == 0);  // ordered by smallest face index
    CHECK(components[1][0] == 4);
}

TEST_CASE("connected components equal the quadratic oracle on a random mesh") {
    Rng rng(9);
    TriangleMesh mesh;
    for (int v = 0; v < 60; ++v)
        mesh.vertices.push_back({rng.next_double(), rng.next_double(), rng.next_double()});
    for (int f = 0; f < 80; ++f) {
        int a = static_cast<int>(rng.next_below(60));
        int b = static_cast<int>(rng.next_below(60));
        int c = static_cast<int>(rng.next_below(60));
        if (a == b || b == c || a == c) continue;
        mesh.faces.push_back({a, b, c});
    }
    CHECK(connected_components(mesh) == quadratic_components(mesh));
}

TEST_CASE("clean removes a small floater and reports it") {
    TriangleMesh mesh = make_sphere(0.5, {0, 0, 0}, 32, 64);  // ~4000 faces
    const std::size_t sphere_faces = mesh.faces.size();
    TriangleMesh floater = make_box({2, 2, 2}, {2.1, 2.1, 2.1});  // 12 faces
    mesh.append(floater);

    const CleanResult result = clean(mesh, 0.01, false);
    CHECK(result.report.components_found == 2);
    CHECK(result.report.components_removed == 1);
    CHECK(result.report.faces_removed == 12);
    CHECK(result.mesh.faces.size() == sphere_faces);
    CHECK(result.report.kept_face_fraction ==
          doctest::Approx(static_cast<double>(sphere_faces) / (sphere_faces + 12)));
    // No stray vertices survive the prune.
    CHECK(result.mesh.vertices.size() == mesh.vertices.size() - 8);
}

TEST_CASE("single-component meshes pass through unchanged") {
    const TriangleMesh sphere = make_sphere(0.4, {0, 0, 0}, 16, 32);
    const CleanResult result = clean(sphere, 0.01, false);
    CHECK(result.report.components_removed == 0);
    CHECK(result.mesh.vertices == sphere.vertices);
    CHECK(result.mesh.faces == sphere.faces);
    CHECK(result.report.kept_face_fraction == 1.0);
}

TEST_CASE("two equal halves survive a high threshold via keep-largest") {
    TriangleMesh mesh = tetrahedron({0, 0, 0});
    mesh.append(tetrahedron({5, 0, 0}));

    // Threshold mode: both halves are exactly half the faces; 0.9 * total
    // exceeds both, so everything would go.
    CHECK_THROWS_WITH(clean(mesh, 0.9, false), doctest::Contains("remove everything"));

    // keep_largest with an exact size tie keeps the lower-index component.
    const CleanResult kept = clean(mesh, 0.9, true);
    CHECK(kept.report.components_removed == 1);
    CHECK(kept.mesh.faces.size() == 4);
    CHECK(kept.mesh.vertices[0] == Vec3{0, 0, 0});  // first tetrahedron
}

TEST_CASE("clean is idempotent bit-for-bit") {
    TriangleMesh mesh = make_sphere(0.5, {0, 0, 0}, 24, 48);
    mesh.append(make_box({3, 3, 3}, {3.2, 3.2, 3.2}));
    mesh.append(tetrahedron({-4, 0, 0}));

    const CleanResult once = clean(mesh, 0.05, false);
    const CleanResult twice = clean(once.mesh, 0.05, false);
    CHECK(once.mesh.vertices == twice.mesh.vertices);
    CHECK(once.mesh.faces == twice.mesh.faces);
    CHECK(twice.report.components_removed == 0);
}

TEST_CASE("surviving faces keep winding and geometry") {
    TriangleMesh mesh = tetrahedron({0, 0, 0});
    mesh.append(make_sphere(0.4, {6, 0, 0}, 24, 48));
    const CleanResult result = clean(mesh, 0.1, false);  // drops the tetrahedron
    REQUIRE(result.mesh.faces.size() == mesh.faces.size() - 4);
    // The sphere's triangles survive with identical vertex geometry.
    for (std::size_t f = 0; f < result.mesh.faces.size(); ++f) {
        const auto& cleaned = result.mesh.faces[f];
        const auto& original = mesh.faces[f + 4];
        for (int k = 0; k < 3; ++k)
            CHECK(result.mesh.vertices[cleaned[k]] == mesh.vertices[original[k]]);
    }
}

TEST_CASE("clean validates its inputs") {
    const TriangleMesh tet = tetrahedron({0, 0, 0});
    CHECK_THROWS(clean(tet, 0.0, false));
    CHECK_THROWS(clean(tet, 1.0, false));
    CHECK_THROWS(clean(TriangleMesh{}, 0.01, false));
}
