#include "hullbench/camera.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "hullbench/errors.hpp"

namespace hullbench {

namespace {
constexpr double kPi = 3.14159265358979323846;
double deg2rad(double d) { return d * kPi / 180.0; }
double wrap_phi(double phi) {
    double p = std::fmod(phi, 360.0);
    if (p < 0.0) p += 360.0;
    return p;
}
}  // namespace

CameraIntrinsics default_intrinsics() { return {}; }

void validate_pose(const SphericalPose& pose) {
    if (!(pose.theta_deg > 0.0 && pose.theta_deg < 180.0))
        throw ConfigError("pose: theta must lie strictly inside (0, 180) degrees, got " +
                          std::to_string(pose.theta_deg));
    if (!(pose.radius > 0.0))
        throw ConfigError("pose: radius must be positive");
    if (!pose.target.finite() || !std::isfinite(pose.phi_deg))
        throw ConfigError("pose: non-finite field");
}

void validate_intrinsics(const CameraIntrinsics& intr) {
    if (!(intr.fx > 0.0 && intr.fy > 0.0))
        throw ConfigError("intrinsics: focal lengths must be positive");
    if (intr.width < 16 || intr.height < 16)
        throw ConfigError("intrinsics: image must be at least 16x16 pixels");
}

void validate_rig_spec(const RigSpec& spec) {
    if (spec.theta_set_deg.empty())
        throw ConfigError("rig: theta set is empty");
    if (spec.count_per_ring < 1)
        throw ConfigError("rig: count_per_ring must be >= 1");
    if (!(spec.delta_phi_deg > 0.0))
        throw ConfigError("rig: delta_phi must be positive");
    if (spec.count_per_ring * spec.delta_phi_deg > 360.0 + 1e-9)
        throw ConfigError("rig: count_per_ring * delta_phi exceeds 360 degrees");
    for (double theta : spec.theta_set_deg)
        validate_pose({theta, 0.0, spec.radius, spec.target});
    validate_intrinsics(spec.intrinsics);
}

Camera pose_to_camera(const SphericalPose& pose, const CameraIntrinsics& intrinsics) {
    validate_pose(pose);
    validate_intrinsics(intrinsics);

    const double theta = deg2rad(pose.theta_deg);
    const double phi = deg2rad(wrap_phi(pose.phi_deg));
    const Vec3 center = pose.target + pose.radius * Vec3{std::sin(theta) * std::cos(phi),
                                                         std::sin(theta) * std::sin(phi),
                                                         std::cos(theta)};

    const Vec3 forward = (pose.target - center).normalized();
    // Near the poles the +z up-hint degenerates; switch to +x.
    const bool degenerate = pose.theta_deg < 1.0 || pose.theta_deg > 179.0;
    const Vec3 up_hint = degenerate ? Vec3{1, 0, 0} : Vec3{0, 0, 1};

    const Vec3 right = forward.cross(up_hint).normalized();
    const Vec3 down = forward.cross(right).normalized();

    Camera cam;
    cam.intrinsics = intrinsics;
    cam.R = Mat3::from_rows(right, down, forward);
    cam.t = -(cam.R * center);
    return cam;
}

std::vector<RigCamera> generate_rig(const RigSpec& spec) {
    validate_rig_spec(spec);
    std::vector<RigCamera> rig;
    rig.reserve(spec.theta_set_deg.size() * spec.count_per_ring);
    for (double theta : spec.theta_set_deg) {
        for (int k = 0; k < spec.count_per_ring; ++k) {
            SphericalPose pose;
            pose.theta_deg = theta;
            pose.phi_deg = wrap_phi(k * spec.delta_phi_deg);
            pose.radius = spec.radius;
            pose.target = spec.target;
            rig.push_back({pose_to_camera(pose, spec.intrinsics), pose});
        }
    }
    return rig;
}

std::optional<PixelProjection> project(const Camera& camera, const Vec3& p) {
    const Vec3 pc = camera.R * p + camera.t;
    if (!(pc.z > 0.0)) return std::nullopt;
    PixelProjection out;
    out.u = camera.intrinsics.fx * (pc.x / pc.z) + camera.intrinsics.cx;
    out.v = camera.intrinsics.fy * (pc.y / pc.z) + camera.intrinsics.cy;
    out.depth = pc.z;
    return out;
}

Ray pixel_ray(const Camera& camera, double u, double v) {
    const Vec3 dir_cam{(u - camera.intrinsics.cx) / camera.intrinsics.fx,
                       (v - camera.intrinsics.cy) / camera.intrinsics.fy, 1.0};
    Ray ray;
    ray.origin = camera.center();
    ray.dir = (camera.R.transposed() * dir_cam).normalized();
    return ray;
}

void save_rig_json(const std::string& path, const std::vector<RigCamera>& rig) {
    nlohmann::json doc;
    auto& cams = doc["cameras"];
    cams = nlohmann::json::array();
    for (const auto& rc : rig) {
        nlohmann::json c;
        c["theta_deg"] = rc.pose.theta_deg;
        c["phi_deg"] = rc.pose.phi_deg;
        c["radius"] = rc.pose.radius;
        c["target"] = {rc.pose.target.x, rc.pose.target.y, rc.pose.target.z};
        c["fx"] = rc.camera.intrinsics.fx;
        c["fy"] = rc.camera.intrinsics.fy;
        c["cx"] = rc.camera.intrinsics.cx;
        c["cy"] = rc.camera.intrinsics.cy;
        c["width"] = rc.camera.intrinsics.width;
        c["height"] = rc.camera.intrinsics.height;
        c["R"] = std::vector<double>(rc.camera.R.m, rc.camera.R.m + 9);
        c["t"] = {rc.camera.t.x, rc.camera.t.y, rc.camera.t.z};
        cams.push_back(std::move(c));
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << doc.dump(2) << "\n";
}

std::vector<RigCamera> load_rig_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open camera file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    if (!doc.contains("cameras") || !doc["cameras"].is_array())
        throw ConfigError(path + ": missing 'cameras' array");
    std::vector<RigCamera> rig;
    for (const auto& c : doc["cameras"]) {
        RigCamera rc;
        rc.pose.theta_deg = c.at("theta_deg").get<double>();
        rc.pose.phi_deg = c.at("phi_deg").get<double>();
        rc.pose.radius = c.at("radius").get<double>();
        const auto& target = c.at("target");
        rc.pose.target = {target.at(0), target.at(1), target.at(2)};
        rc.camera.intrinsics.fx = c.at("fx").get<double>();
        rc.camera.intrinsics.fy = c.at("fy").get<double>();
        rc.camera.intrinsics.cx = c.at("cx").get<double>();
        rc.camera.intrinsics.cy = c.at("cy").get<double>();
        rc.camera.intrinsics.width = c.at("width").get<int>();
        rc.camera.intrinsics.height = c.at("height").get<int>();
        const auto& rot = c.at("R");
        if (rot.size() != 9) throw ConfigError(path + ": R must have 9 entries");
        for (int i = 0; i < 9; ++i) rc.camera.R.m[i] = rot.at(i).get<double>();
        const auto& t = c.at("t");
        rc.camera.t = {t.at(0), t.at(1), t.at(2)};
        validate_intrinsics(rc.camera.intrinsics);
        rig.push_back(std::move(rc));
    }
    return rig;
}

}  // namespace hullbench
