#include <doctest.h>

#include <filesystem>

#include "hullbench/camera.hpp"
#include "hullbench/sampling.hpp"

using namespace hullbench;

namespace {
double orthonormality_residual(const Mat3& r) {
    double residual = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double dot = r.row(i).dot(r.row(j));
            residual = std::max(residual, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    }
    return residual;
}
}  // namespace

TEST_CASE("side pose places the camera on +x looking back at the origin") {
    const Camera cam = pose_to_camera({90.0, 0.0, 2.0, {0, 0, 0}}, default_intrinsics());
    CHECK((cam.center() - Vec3{2, 0, 0}).norm() < 1e-12);
    CHECK((cam.forward() - Vec3{-1, 0, 0}).norm() < 1e-12);
}

TEST_CASE("near-pole poses fall back to the +x up-hint") {
    const Camera cam = pose_to_camera({0.0001, 123.0, 2.0, {0, 0, 0}}, default_intrinsics());
    CHECK(orthonormality_residual(cam.R) < 1e-9);
    CHECK(std::abs(cam.R.det() - 1.0) < 1e-9);
}

TEST_CASE("random poses keep radius and orthonormality") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        SphericalPose pose;
        pose.theta_deg = 0.5 + 179.0 * rng.next_double();
        pose.phi_deg = 720.0 * rng.next_double() - 360.0;
        pose.radius = 0.5 + 4.0 * rng.next_double();
        pose.target = {rng.next_double(), rng.next_double(), rng.next_double()};
        const Camera cam = pose_to_camera(pose, default_intrinsics());
        CHECK(std::abs((cam.center() - pose.target).norm() - pose.radius) < 1e-9);
        CHECK(orthonormality_residual(cam.R) < 1e-9);
        CHECK(std::abs(cam.R.det() - 1.0) < 1e-9);
    }
}

TEST_CASE("pose validation rejects out-of-range values") {
    CHECK_THROWS(validate_pose({0.0, 0, 1, {0, 0, 0}}));
    CHECK_THROWS(validate_pose({180.0, 0, 1, {0, 0, 0}}));
    CHECK_THROWS(validate_pose({45.0, 0, 0.0, {0, 0, 0}}));
}

TEST_CASE("rig generation covers rings in stable order") {
    RigSpec spec;
    spec.radius = 2.0;

    spec.theta_set_deg = {45.0};
    spec.delta_phi_deg = 10.0;
    spec.count_per_ring = 36;
    CHECK(generate_rig(spec).size() == 36);

    spec.delta_phi_deg = 30.0;
    spec.count_per_ring = 12;
    const auto ring = generate_rig(spec);
    CHECK(ring.size() == 12);
    CHECK(ring.back().pose.phi_deg == doctest::Approx(330.0));

    spec.theta_set_deg = {30.0, 45.0, 75.0};
    spec.delta_phi_deg = 90.0;
    spec.count_per_ring = 4;
    const auto rig = generate_rig(spec);
    CHECK(rig.size() == 12);
    CHECK(rig[0].pose.theta_deg == 30.0);
    CHECK(rig[4].pose.theta_deg == 45.0);
    CHECK(rig[8].pose.theta_deg == 75.0);

    // All centers on the sphere of the requested radius.
    for (const auto& rc : rig)
        CHECK(std::abs((rc.camera.center() - spec.target).norm() - spec.radius) < 1e-9);

    spec.count_per_ring = 5;  // 5 * 90 > 360
    CHECK_THROWS(generate_rig(spec));
}

TEST_CASE("points on the optical axis project to the principal point") {
    const CameraIntrinsics intr = default_intrinsics();
    const Camera cam = pose_to_camera({90.0, 0.0, 2.0, {0, 0, 0}}, intr);
    const auto proj = project(cam, {0, 0, 0});
    REQUIRE(proj.has_value());
    CHECK(proj->u == doctest::Approx(intr.cx).epsilon(1e-12));
    CHECK(proj->v == doctest::Approx(intr.cy).epsilon(1e-12));
    CHECK(proj->depth == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_FALSE(project(cam, {3, 0, 0}).has_value());  // behind the camera
}

TEST_CASE("projection and pixel rays agree within 1e-6") {
    const Camera cam = pose_to_camera({63.0, 140.0, 2.5, {0.1, 0, -0.1}},
                                      default_intrinsics());
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 p{rng.next_double() - 0.5, rng.next_double() - 0.5,
                     rng.next_double() - 0.5};
        const auto proj = project(cam, p);
        REQUIRE(proj.has_value());
        const Ray ray = pixel_ray(cam, proj->u, proj->v);
        // Distance from p to the ray.
        const Vec3 to_p = p - ray.origin;
        const double dist = (to_p - ray.dir * to_p.dot(ray.dir)).norm();
        CHECK(dist < 1e-6);
    }
}

TEST_CASE("rig JSON round-trips through the documented schema") {
    RigSpec spec;
    spec.theta_set_deg = {45.0, 75.0};
    spec.delta_phi_deg = 90.0;
    spec.count_per_ring = 4;
    const auto rig = generate_rig(spec);

    const auto path = std::filesystem::temp_directory_path() / "hullbench_rig.json";
    save_rig_json(path.string(), rig);
    const auto loaded = load_rig_json(path.string());
    REQUIRE(loaded.size() == rig.size());
    for (std::size_t i = 0; i < rig.size(); ++i) {
        CHECK(loaded[i].pose.theta_deg == rig[i].pose.theta_deg);
        CHECK(loaded[i].pose.phi_deg == rig[i].pose.phi_deg);
        for (int m = 0; m < 9; ++m) CHECK(loaded[i].camera.R.m[m] == rig[i].camera.R.m[m]);
        CHECK(loaded[i].camera.t == rig[i].camera.t);
    }
}
