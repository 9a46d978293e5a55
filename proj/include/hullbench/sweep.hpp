#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hullbench/pipeline.hpp"

namespace hullbench {

struct SweepRow {
    int n_images = 0;
    double theta_deg = 0.0;
    double delta_phi_deg = 0.0;
    std::optional<double> cd, iou, psnr_db, ssim, lpips;
    StageTimings timings;
    std::string status = "ok";  // "ok" or "error: <message>"
};

struct SweepResult {
    std::string kind;  // "images", "theta", "overlap"
    std::vector<SweepRow> rows;
};

/// One run per image count N; Δφ = 360/N when full_ring, else the base Δφ.
SweepResult sweep_image_count(const PipelineConfig& base, const std::vector<int>& counts,
                              bool full_ring);

/// One full-ring run per theta.
SweepResult sweep_theta(const PipelineConfig& base, const std::vector<double>& thetas);

/// One run per (n_images, delta_phi) pair; partial arcs allowed.
SweepResult sweep_overlap(const PipelineConfig& base,
                          const std::vector<std::pair<int, double>>& pairs);

enum class ReportFormat { Csv, Json };

/// Writes the sweep table. CSV column order is fixed:
/// n_images,theta_deg,delta_phi_deg,cd,iou,psnr_db,ssim,lpips,
/// seg_s,sparse_s,mesh_s,total_s,status
/// With include_timings false the four timing fields are left empty, so
/// deterministic reruns yield byte-identical files. plotdata additionally
/// writes per-metric x/y series (plot_iou.csv, plot_cd.csv, plot_runtime.csv).
void emit_report(const SweepResult& result, const std::string& out_stem,
                 ReportFormat format, bool plotdata, bool include_timings);

std::string sweep_to_csv(const SweepResult& result, bool include_timings);
std::string sweep_to_json(const SweepResult& result, bool include_timings);

}  // namespace hullbench
