#include "hullbench/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "hullbench/errors.hpp"

namespace hullbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string sanitize_status(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

SweepRow run_row(const PipelineConfig& config, int n_images, double theta,
                 double delta_phi) {
    SweepRow row;
    row.n_images = n_images;
    row.theta_deg = theta;
    row.delta_phi_deg = delta_phi;
    try {
        const PipelineResult result = run_pipeline(config);
        row.cd = result.metrics.geom.chamfer;
        row.iou = result.metrics.geom.iou;
        row.psnr_db = result.metrics.texture.psnr_db;
        row.ssim = result.metrics.texture.ssim;
        row.lpips = result.metrics.texture.lpips;
        row.timings = result.timings;
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
    }
    return row;
}

std::string row_dir_name(const std::string& kind, std::size_t index, const SweepRow& row) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "row_%02zu_%s_n%d_t%g_d%g", index, kind.c_str(),
                  row.n_images, row.theta_deg, row.delta_phi_deg);
    return buf;
}

}  // namespace

SweepResult sweep_image_count(const PipelineConfig& base, const std::vector<int>& counts,
                              bool full_ring) {
    SweepResult result;
    result.kind = "images";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const int n = counts[i];
        if (n < 1) throw ConfigError("sweep: image count must be >= 1");
        PipelineConfig config = base;
        config.count_per_ring = n;
        config.delta_phi_deg = full_ring ? 360.0 / n : base.delta_phi_deg;
        SweepRow probe;
        probe.n_images = n;
        probe.theta_deg = config.theta_deg;
        probe.delta_phi_deg = config.delta_phi_deg;
        config.output_dir =
            (fs::path(base.output_dir) / row_dir_name(result.kind, i, probe)).string();
        result.rows.push_back(run_row(config, n, config.theta_deg, config.delta_phi_deg));
    }
    return result;
}

SweepResult sweep_theta(const PipelineConfig& base, const std::vector<double>& thetas) {
    SweepResult result;
    result.kind = "theta";
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        PipelineConfig config = base;
        config.theta_deg = thetas[i];
        config.delta_phi_deg = 360.0 / base.count_per_ring;  // full ring
        SweepRow probe;
        probe.n_images = config.count_per_ring;
        probe.theta_deg = thetas[i];
        probe.delta_phi_deg = config.delta_phi_deg;
        config.output_dir =
            (fs::path(base.output_dir) / row_dir_name(result.kind, i, probe)).string();
        result.rows.push_back(
            run_row(config, config.count_per_ring, thetas[i], config.delta_phi_deg));
    }
    return result;
}

SweepResult sweep_overlap(const PipelineConfig& base,
                          const std::vector<std::pair<int, double>>& pairs) {
    SweepResult result;
    result.kind = "overlap";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [n, delta_phi] = pairs[i];
        PipelineConfig config = base;
        config.count_per_ring = n;
        config.delta_phi_deg = delta_phi;
        SweepRow probe;
        probe.n_images = n;
        probe.theta_deg = config.theta_deg;
        probe.delta_phi_deg = delta_phi;
        config.output_dir =
            (fs::path(base.output_dir) / row_dir_name(result.kind, i, probe)).string();
        result.rows.push_back(run_row(config, n, config.theta_deg, delta_phi));
    }
    return result;
}

namespace {

std::string opt_metric(const std::optional<double>& v) {
    return v ? format_metric(*v) : "";
}

std::string timing_str(double v, bool include) {
    if (!include) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string sweep_to_csv(const SweepResult& result, bool include_timings) {
    std::string csv =
        "n_images,theta_deg,delta_phi_deg,cd,iou,psnr_db,ssim,lpips,"
        "seg_s,sparse_s,mesh_s,total_s,status\n";
    for (const auto& row : result.rows) {
        csv += std::to_string(row.n_images) + "," + format_metric(row.theta_deg) + "," +
               format_metric(row.delta_phi_deg) + "," + opt_metric(row.cd) + "," +
               opt_metric(row.iou) + "," + opt_metric(row.psnr_db) + "," +
               opt_metric(row.ssim) + "," + opt_metric(row.lpips) + "," +
               timing_str(row.timings.segmentation_s, include_timings) + "," +
               timing_str(row.timings.sparse_s, include_timings) + "," +
               timing_str(row.timings.mesh_s, include_timings) + "," +
               timing_str(row.timings.total_s, include_timings) + "," +
               sanitize_status(row.status) + "\n";
    }
    return csv;
}

std::string sweep_to_json(const SweepResult& result, bool include_timings) {
    json doc;
    doc["kind"] = result.kind;
    doc["rows"] = json::array();
    for (const auto& row : result.rows) {
        json r;
        r["n_images"] = row.n_images;
        r["theta_deg"] = row.theta_deg;
        r["delta_phi_deg"] = row.delta_phi_deg;
        auto set_opt = [&](const char* key, const std::optional<double>& v) {
            if (!v) r[key] = nullptr;
            else if (std::isinf(*v)) r[key] = *v > 0 ? "inf" : "-inf";
            else r[key] = *v;
        };
        set_opt("cd", row.cd);
        set_opt("iou", row.iou);
        set_opt("psnr_db", row.psnr_db);
        set_opt("ssim", row.ssim);
        set_opt("lpips", row.lpips);
        if (include_timings) {
            r["seg_s"] = row.timings.segmentation_s;
            r["sparse_s"] = row.timings.sparse_s;
            r["mesh_s"] = row.timings.mesh_s;
            r["total_s"] = row.timings.total_s;
        }
        r["status"] = row.status;
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

void emit_report(const SweepResult& result, const std::string& out_stem,
                 ReportFormat format, bool plotdata, bool include_timings) {
    if (result.rows.empty()) throw ConfigError("emit_report: sweep has no rows");
    const fs::path stem(out_stem);
    if (stem.has_parent_path()) fs::create_directories(stem.parent_path());

    const std::string path =
        out_stem + (format == ReportFormat::Csv ? ".csv" : ".json");
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << (format == ReportFormat::Csv ? sweep_to_csv(result, include_timings)
                                        : sweep_to_json(result, include_timings));
    if (!out) throw ConfigError("write failure on '" + path + "'");

    if (!plotdata) return;
    // x axis follows the sweep's varying parameter.
    auto x_of = [&](const SweepRow& row) {
        return result.kind == "theta" ? row.theta_deg
                                      : static_cast<double>(row.n_images);
    };
    const std::string x_name = result.kind == "theta" ? "theta_deg" : "n_images";
    auto write_series = [&](const std::string& name, auto&& y_of) {
        std::ofstream series(out_stem + "_plot_" + name + ".csv");
        series << x_name << "," << name << "\n";
        for (const auto& row : result.rows) {
            const auto y = y_of(row);
            if (!y) continue;
            series << format_metric(x_of(row)) << "," << format_metric(*y) << "\n";
        }
    };
    write_series("iou", [](const SweepRow& r) { return r.iou; });
    write_series("cd", [](const SweepRow& r) { return r.cd; });
    write_series("runtime", [&](const SweepRow& r) -> std::optional<double> {
        if (r.status != "ok") return std::nullopt;
        return r.timings.total_s;
    });
}

}  // namespace hullbench
