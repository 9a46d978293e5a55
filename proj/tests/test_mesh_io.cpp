#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hullbench/errors.hpp"
#include "hullbench/mesh_io.hpp"
#include "hullbench/scenes.hpp"

using namespace hullbench;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "hullbench_io_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const std::string& name, const std::string& text) {
    const fs::path path = temp_dir() / name;
    std::ofstream out(path);
    out << text;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("minimal OBJ loads as one face, three vertices") {
    const auto path = write_text("minimal.obj",
                                 "v 0 0 0\n"
                                 "v 1 0 0\n"
                                 "v 0 1 0\n"
                                 "f 1 2 3\n");
    const TriangleMesh mesh = load_mesh(path.string());
    CHECK(mesh.vertices.size() == 3);
    CHECK(mesh.faces.size() == 1);
    CHECK(mesh.faces[0] == std::array<int, 3>{0, 1, 2});
    CHECK_FALSE(mesh.has_colors());
}

TEST_CASE("OBJ with out-of-range face index reports the line") {
    const auto path = write_text("bad_index.obj",
                                 "v 0 0 0\n"
                                 "v 1 0 0\n"
                                 "v 0 1 0\n"
                                 "f 1 2 5\n");
    CHECK_THROWS_WITH_AS(load_mesh(path.string()), doctest::Contains(":4:"), ConfigError);
}

TEST_CASE("degenerate OBJ face names the face index") {
    const auto path = write_text("degenerate.obj",
                                 "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
                                 "f 1 2 3\n"
                                 "f 1 1 2\n");
    CHECK_THROWS_WITH_AS(load_mesh(path.string()), doctest::Contains("face 1"), ConfigError);
}

TEST_CASE("binary PLY is rejected with a clear message") {
    const auto path = write_text("binary.ply",
                                 "ply\n"
                                 "format binary_little_endian 1.0\n"
                                 "element vertex 0\n"
                                 "end_header\n");
    CHECK_THROWS_WITH_AS(load_mesh(path.string()), doctest::Contains("binary"), ConfigError);
}

TEST_CASE("sphere round-trip is bit-stable at the written precision") {
    const TriangleMesh sphere = make_sphere(0.5, {0.1, -0.2, 0.3}, 8, 12);
    REQUIRE(sphere.faces.size() >= 100);

    for (const char* ext : {"obj", "ply"}) {
        CAPTURE(ext);
        const fs::path first = temp_dir() / (std::string("sphere_a.") + ext);
        const fs::path second = temp_dir() / (std::string("sphere_b.") + ext);
        save_mesh(sphere, first.string());
        const TriangleMesh loaded = load_mesh(first.string());
        CHECK(loaded.vertices.size() == sphere.vertices.size());
        CHECK(loaded.faces == sphere.faces);

        // A second trip through the 9-digit format must be exact.
        save_mesh(loaded, second.string());
        CHECK(slurp(first) == slurp(second));
        const TriangleMesh reloaded = load_mesh(second.string());
        CHECK(reloaded.vertices == loaded.vertices);
        CHECK(reloaded.faces == loaded.faces);
    }
}

TEST_CASE("PLY output carries per-vertex colors") {
    TriangleMesh mesh = make_box({0, 0, 0}, {1, 1, 1}, Rgb{1.0, 0.5, 0.0});
    const fs::path path = temp_dir() / "colored.ply";
    save_mesh(mesh, path.string());
    const std::string text = slurp(path);
    CHECK(text.find("property uchar red") != std::string::npos);

    const TriangleMesh loaded = load_mesh(path.string());
    REQUIRE(loaded.has_colors());
    for (const auto& c : loaded.vertex_colors) {
        CHECK(c[0] == doctest::Approx(1.0).epsilon(1.0 / 255));
        CHECK(c[1] == doctest::Approx(0.5).epsilon(1.0 / 255));
        CHECK(c[2] == doctest::Approx(0.0).epsilon(1.0 / 255));
    }
}

TEST_CASE("OBJ extended vertex colors round-trip") {
    TriangleMesh mesh;
    mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    mesh.faces = {{0, 1, 2}};
    mesh.vertex_colors = {{0.25, 0.5, 0.75}, {1, 0, 0}, {0, 0, 1}};
    const fs::path path = temp_dir() / "colored.obj";
    save_mesh(mesh, path.string());
    const TriangleMesh loaded = load_mesh(path.string());
    REQUIRE(loaded.has_colors());
    CHECK(loaded.vertex_colors[0][2] == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("save_mesh creates the file where asked") {
    const fs::path path = temp_dir() / "fresh_target.obj";
    fs::remove(path);
    TriangleMesh mesh;
    mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    mesh.faces = {{0, 1, 2}};
    save_mesh(mesh, path.string());
    CHECK(fs::exists(path));
}
