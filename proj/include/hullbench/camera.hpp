#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hullbench/vec3.hpp"

namespace hullbench {

struct CameraIntrinsics {
    double fx = 290.0, fy = 290.0;
    double cx = 128.0, cy = 128.0;
    int width = 256, height = 256;
};

/// 256x256 at f = 290 px: a unit-diagonal object at radius 2.5 fills roughly
/// 60% of the frame.
CameraIntrinsics default_intrinsics();

/// Viewpoint on a sphere around `target`. theta is the polar angle from +z
/// ("viewing angle"), phi the azimuth; both in degrees.
struct SphericalPose {
    double theta_deg = 90.0;
    double phi_deg = 0.0;
    double radius = 1.0;
    Vec3 target{0, 0, 0};
};

/// World frame: right-handed, +z up. Camera frame: +z forward, +x right,
/// +y down (rows grow downward). R, t map world to camera: p_cam = R p + t.
struct Camera {
    CameraIntrinsics intrinsics;
    Mat3 R;
    Vec3 t;

    Vec3 center() const { return R.transposed() * (-t); }
    Vec3 forward() const { return R.row(2); }
};

struct RigSpec {
    std::vector<double> theta_set_deg;
    double delta_phi_deg = 10.0;
    int count_per_ring = 36;
    double radius = 2.5;
    Vec3 target{0, 0, 0};
    CameraIntrinsics intrinsics;
};

struct RigCamera {
    Camera camera;
    SphericalPose pose;
};

/// Throws on invariant violations (theta outside (0,180), radius <= 0, ...).
void validate_pose(const SphericalPose& pose);
void validate_intrinsics(const CameraIntrinsics& intr);
void validate_rig_spec(const RigSpec& spec);

/// Places the camera at target + radius*(sin t cos p, sin t sin p, cos t),
/// looking at the target with up-hint +z (+x within 1 degree of the poles).
Camera pose_to_camera(const SphericalPose& pose, const CameraIntrinsics& intrinsics);

/// One ring per theta, count_per_ring cameras at phi = k * delta_phi.
/// Ordering: theta outer (as given), phi inner.
std::vector<RigCamera> generate_rig(const RigSpec& spec);

struct PixelProjection {
    double u = 0.0, v = 0.0;  // continuous pixel coordinates
    double depth = 0.0;       // distance along the optical axis
};

/// Pinhole projection; empty when the point is at or behind the camera plane.
std::optional<PixelProjection> project(const Camera& camera, const Vec3& p);

struct Ray {
    Vec3 origin;
    Vec3 dir;  // unit length
};

/// World-space ray through the continuous pixel coordinate (u, v).
Ray pixel_ray(const Camera& camera, double u, double v);

/// Pixel column/row covering a continuous coordinate; pixel (i, j) spans
/// [i, i+1) x [j, j+1), center at (i+0.5, j+0.5).
inline int pixel_of(double coord) { return static_cast<int>(std::floor(coord)); }

void save_rig_json(const std::string& path, const std::vector<RigCamera>& rig);
std::vector<RigCamera> load_rig_json(const std::string& path);

}  // namespace hullbench
