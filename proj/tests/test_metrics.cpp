#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "hullbench/metrics.hpp"
#include "hullbench/sampling.hpp"
#include "hullbench/scenes.hpp"

using namespace hullbench;

namespace {
PointCloud random_cloud(std::size_t n, std::uint64_t seed, double span = 2.0) {
    Rng rng(seed);
    PointCloud cloud;
    for (std::size_t i = 0; i < n; ++i)
        cloud.points.push_back({span * (rng.next_double() - 0.5),
                                span * (rng.next_double() - 0.5),
                                span * (rng.next_double() - 0.5)});
    return cloud;
}
}  // namespace

TEST_CASE("chamfer distance: identity, unit offset, brute-force parity") {
    PointCloud p, q;
    p.points = {{0, 0, 0}};
    q.points = {{1, 0, 0}};
    CHECK(chamfer_distance(p, p) == 0.0);
    CHECK(chamfer_distance(p, q) == doctest::Approx(2.0).epsilon(1e-12));

    const PointCloud a = random_cloud(500, 1);
    const PointCloud b = random_cloud(500, 2);

    double ab = 0.0, ba = 0.0;
    for (const auto& x : a.points) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& y : b.points) best = std::min(best, (x - y).squared_norm());
        ab += best;
    }
    for (const auto& y : b.points) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& x : a.points) best = std::min(best, (x - y).squared_norm());
        ba += best;
    }
    const double brute = ab / a.points.size() + ba / b.points.size();
    CHECK(std::abs(chamfer_distance(a, b) - brute) < 1e-9);
}

TEST_CASE("chamfer distance is exactly symmetric and rejects empties") {
    const PointCloud a = random_cloud(300, 5);
    const PointCloud b = random_cloud(200, 6);
    CHECK(chamfer_distance(a, b) == chamfer_distance(b, a));
    CHECK(chamfer_distance(a, a) == 0.0);
    CHECK_THROWS(chamfer_distance(a, PointCloud{}));
}

TEST_CASE("volumetric IoU: identity, half overlap, disjoint") {
    const TriangleMesh cube = make_box({0, 0, 0}, {1, 1, 1});
    TriangleMesh shifted = cube;
    for (auto& v : shifted.vertices) v.x += 0.5;

    AABB bounds = bounding_box(cube);
    bounds.extend(bounding_box(shifted));
    bounds = bounds.padded(0.05);

    CHECK(volumetric_iou(cube, cube, 64, bounds) == 1.0);
    CHECK(std::abs(volumetric_iou(cube, shifted, 256, bounds) - 1.0 / 3.0) < 0.01);

    TriangleMesh far_cube = cube;
    for (auto& v : far_cube.vertices) v.x += 2.0;
    AABB wide = bounding_box(cube);
    wide.extend(bounding_box(far_cube));
    CHECK(volumetric_iou(cube, far_cube, 64, wide.padded(0.05)) == 0.0);

    // Empty union is an error, not zero.
    const AABB elsewhere{{10, 10, 10}, {11, 11, 11}};
    CHECK_THROWS(volumetric_iou(cube, shifted, 32, elsewhere));
}

TEST_CASE("psnr analytic values and the infinity sentinel") {
    ImageBuffer x(32, 32, 3, 0.25);
    ImageBuffer y(32, 32, 3, 0.75);
    CHECK(psnr(x, y) == doctest::Approx(6.0206).epsilon(1e-6 / 6.0));
    CHECK(std::abs(psnr(x, y) - 10.0 * std::log10(1.0 / 0.25)) < 1e-9);

    ImageBuffer z(32, 32, 3, 0.35);  // |0.35 - 0.25| = 0.1, MSE = 0.01
    CHECK(std::abs(psnr(x, z) - 20.0) < 1e-6);

    CHECK(std::isinf(psnr(x, x)));
    ImageBuffer wrong(16, 32, 3, 0.0);
    CHECK_THROWS(psnr(x, wrong));
}

TEST_CASE("psnr strictly decreases with noise amplitude") {
    Rng rng(4);
    ImageBuffer base(64, 64, 3);
    for (auto& v : base.data) v = rng.next_double();
    double previous = std::numeric_limits<double>::infinity();
    for (double amplitude : {0.02, 0.05, 0.1}) {
        ImageBuffer noisy = base;
        Rng noise(7);
        for (auto& v : noisy.data)
            v = std::min(1.0, std::max(0.0, v + amplitude * (2 * noise.next_double() - 1)));
        const double value = psnr(base, noisy);
        CHECK(value < previous);
        previous = value;
    }
}

TEST_CASE("ssim analytic cases") {
    ImageBuffer x(64, 64, 1, 0.5);
    CHECK(std::abs(ssim(x, x) - 1.0) < 1e-12);

    ImageBuffer zeros(64, 64, 1, 0.0);
    ImageBuffer ones(64, 64, 1, 1.0);
    // Zero variances and means 0/1: C1 / (1 + C1) with C1 = 1e-4.
    const double expected = 1e-4 / 1.0001;
    CHECK(std::abs(ssim(zeros, ones) - expected) < 1e-9);

    // Symmetry.
    Rng rng(3);
    ImageBuffer a(32, 32, 1), b(32, 32, 1);
    for (auto& v : a.data) v = rng.next_double();
    for (auto& v : b.data) v = rng.next_double();
    CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
}

TEST_CASE("a single flipped pixel drops ssim below one but not far") {
    ImageBuffer x(256, 256, 1, 0.4);
    ImageBuffer y = x;
    y.at(130, 140, 0) = 1.0;
    const double value = ssim(x, y);
    CHECK(value < 1.0);
    CHECK(value > 0.9);
}

TEST_CASE("ssim rejects bad shapes") {
    ImageBuffer x(64, 64, 1, 0.5);
    ImageBuffer smaller(8, 8, 1, 0.5);
    CHECK_THROWS(ssim(x, smaller));          // shape mismatch
    CHECK_THROWS(ssim(smaller, smaller));    // smaller than the window
}

TEST_CASE("lpips weighted-sum fixtures are exact") {
    FeatureStack fx, fy;
    CHECK(lpips_from_features(fx, fy) == 0.0);

    // One layer, weight 1, difference with squared Frobenius norm 4.
    FeatureStack::Layer la{2, 2, 1, 1.0, {1, 1, 1, 1}};
    FeatureStack::Layer lb{2, 2, 1, 1.0, {0, 0, 0, 0}};
    fx.layers = {la};
    fy.layers = {lb};
    CHECK(lpips_from_features(fx, fy) == 4.0);
    CHECK(lpips_from_features(fx, fx) == 0.0);

    // Two layers, weights (0.5, 2), squared norms (1, 3) -> 6.5.
    FeatureStack::Layer a2{1, 1, 1, 0.5, {1.0f}};
    FeatureStack::Layer b2{1, 1, 1, 0.5, {0.0f}};
    FeatureStack::Layer a3{1, 3, 1, 2.0, {1.0f, 1.0f, 1.0f}};
    FeatureStack::Layer b3{1, 3, 1, 2.0, {0.0f, 0.0f, 0.0f}};
    fx.layers = {a2, a3};
    fy.layers = {b2, b3};
    CHECK(lpips_from_features(fx, fy) == 6.5);

    fy.layers[1].data = {0.0f, 0.0f};
    fy.layers[1].width = 2;
    CHECK_THROWS(lpips_from_features(fx, fy));
}

TEST_CASE("feature pair container round-trips") {
    FeatureStack fx, fy;
    fx.layers.push_back({2, 3, 2, 0.75, std::vector<float>(12, 1.5f)});
    fy.layers.push_back({2, 3, 2, 0.75, std::vector<float>(12, -0.5f)});
    fx.layers.push_back({1, 1, 4, 2.0, {1, 2, 3, 4}});
    fy.layers.push_back({1, 1, 4, 2.0, {4, 3, 2, 1}});

    const auto path = std::filesystem::temp_directory_path() / "pair.lpipsfs";
    save_feature_pair(path.string(), fx, fy);
    const auto [rx, ry] = load_feature_pair(path.string());
    REQUIRE(rx.layers.size() == 2);
    CHECK(rx.layers[0].data == fx.layers[0].data);
    CHECK(ry.layers[1].data == fy.layers[1].data);
    CHECK(rx.layers[1].weight == 2.0);
    CHECK(lpips_from_features(rx, ry) ==
          doctest::Approx(lpips_from_features(fx, fy)).epsilon(1e-12));
}

TEST_CASE("evaluate_geometry: identity and anchored scale error") {
    const TriangleMesh sphere = make_sphere(0.5, {0.2, -0.1, 0.3}, 32, 64);
    GeomMetricConfig config;
    config.samples = 20000;
    config.resolution = 64;

    const GeomMetrics self = evaluate_geometry(sphere, sphere, config);
    CHECK(self.iou == 1.0);  // identical voxelizations
    CHECK(self.chamfer < 1e-4);
    CHECK(self.samples_per_mesh == 20000);
    CHECK(self.voxel_resolution == 64);

    TriangleMesh doubled = sphere;
    for (auto& v : doubled.vertices) v = v * 2.0;
    const GeomMetrics scaled = evaluate_geometry(doubled, sphere, config);
    // The frame is anchored on the ground truth, so scale error stays visible.
    CHECK(scaled.chamfer > 1e-3);
    CHECK(scaled.iou < 0.9);
}

TEST_CASE("evaluate_texture averages pairs and counts infinities") {
    ImageBuffer a(32, 32, 3, 0.3);
    ImageBuffer b(32, 32, 3, 0.8);
    const TextureMetrics identical = evaluate_texture({a, a}, {a, a});
    CHECK(identical.ssim == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(identical.infinite_psnr_pairs == 2);
    CHECK(std::isinf(identical.psnr_db));

    const TextureMetrics mixed = evaluate_texture({a, a}, {a, b});
    CHECK(mixed.infinite_psnr_pairs == 1);
    CHECK(mixed.psnr_db == doctest::Approx(psnr(a, b)));
    CHECK(mixed.ssim < 1.0);

    CHECK_THROWS(evaluate_texture({a}, {a, b}));
}
