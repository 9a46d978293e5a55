#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hullbench/camera.hpp"
#include "hullbench/meshclean.hpp"
#include "hullbench/metrics.hpp"
#include "hullbench/render.hpp"

namespace hullbench {

struct SceneObjectSpec {
    std::string name;
    std::string source;  // "builtin:<name>" or a mesh file path
};

struct PipelineConfig {
    std::vector<SceneObjectSpec> objects{{"figurine", "builtin:figurine"}};
    std::array<double, 3> background{0.0, 0.0, 0.0};
    std::string query = "figurine";

    double theta_deg = 45.0;
    double delta_phi_deg = 10.0;
    int count_per_ring = 36;
    double radius = 2.5;
    Vec3 target{0, 0, 0};
    CameraIntrinsics intrinsics;

    int padding_px = 50;
    int carve_resolution = 128;
    int track_candidates = 5000;
    int track_min_views = 2;
    double clean_min_face_fraction = 0.01;
    bool clean_keep_largest = false;

    int metric_samples = 100000;
    int metric_resolution = 128;
    // Texture metrics use one fixed evaluation ring for every run, so
    // different input configurations are judged from identical viewpoints.
    // The phi phase-shift keeps it disjoint from the input rings.
    double heldout_theta_deg = 55.0;
    double heldout_phi_offset_deg = 22.5;
    int heldout_count = 8;

    std::uint64_t seed = 1;
    std::string output_dir = "out";
    bool write_images = true;
};

PipelineConfig load_config(const std::string& path);
void save_config(const PipelineConfig& config, const std::string& path);
std::string config_to_json(const PipelineConfig& config);
PipelineConfig config_from_json(const std::string& text);

struct StageTimings {
    double segmentation_s = 0.0;
    double sparse_s = 0.0;  // render + carve + tracks
    double mesh_s = 0.0;    // extract + clean + colorize
    double total_s = 0.0;
};

struct MetricsReport {
    GeomMetrics geom;
    TextureMetrics texture;
};

struct PipelineResult {
    TriangleMesh mesh;  // cleaned, colorized reconstruction
    MetricsReport metrics;
    StageTimings timings;
    CleanReport clean_report;
    double carved_fraction = 0.0;
    double uncolored_fraction = 0.0;
    int tracks_kept = 0;
};

/// Full run: render -> segment -> carve + tracks -> extract -> clean ->
/// colorize -> evaluate, writing every intermediate plus metrics.json and
/// run.json into config.output_dir. Stage failures raise StageError after
/// being recorded in run.json.
PipelineResult run_pipeline(const PipelineConfig& config);

/// Loads the configured scene (used by the CLI stages too).
Scene build_scene(const PipelineConfig& config);

/// Formats a double for reports: shortest round-trip representation, "inf"
/// for infinities.
std::string format_metric(double v);

}  // namespace hullbench
