#include "hullbench/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "hullbench/errors.hpp"
#include "hullbench/mesh_io.hpp"
#include "hullbench/reconstruct.hpp"
#include "hullbench/scenes.hpp"
#include "hullbench/segment.hpp"

namespace hullbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string view_name(const char* stem, int ring, int k, const char* ext) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s_%d_%03d.%s", stem, ring, k, ext);
    return buf;
}

std::string mask_name(const std::string& object, int ring, int k) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "mask_%s_%d_%03d.pgm", object.c_str(), ring, k);
    return buf;
}

void write_json_file(const json& doc, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
    out << doc.dump(2) << "\n";
}

json json_or_inf(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

}  // namespace

std::string format_metric(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

Scene build_scene(const PipelineConfig& config) {
    if (config.objects.empty()) throw ConfigError("config: no scene objects");
    Scene scene;
    scene.background = config.background;
    for (const auto& spec : config.objects)
        scene.objects.push_back({spec.name, resolve_mesh_source(spec.source)});
    validate_scene(scene);
    return scene;
}

std::string config_to_json(const PipelineConfig& c) {
    json doc;
    doc["objects"] = json::array();
    for (const auto& object : c.objects)
        doc["objects"].push_back({{"name", object.name}, {"source", object.source}});
    doc["background"] = c.background;
    doc["query"] = c.query;
    doc["rig"] = {{"theta_deg", c.theta_deg},
                  {"delta_phi_deg", c.delta_phi_deg},
                  {"count_per_ring", c.count_per_ring},
                  {"radius", c.radius},
                  {"target", {c.target.x, c.target.y, c.target.z}},
                  {"intrinsics",
                   {{"fx", c.intrinsics.fx},
                    {"fy", c.intrinsics.fy},
                    {"cx", c.intrinsics.cx},
                    {"cy", c.intrinsics.cy},
                    {"width", c.intrinsics.width},
                    {"height", c.intrinsics.height}}}};
    doc["padding_px"] = c.padding_px;
    doc["carve_resolution"] = c.carve_resolution;
    doc["track_candidates"] = c.track_candidates;
    doc["track_min_views"] = c.track_min_views;
    doc["clean"] = {{"min_face_fraction", c.clean_min_face_fraction},
                    {"keep_largest", c.clean_keep_largest}};
    doc["metrics"] = {{"samples", c.metric_samples},
                      {"resolution", c.metric_resolution},
                      {"heldout_theta_deg", c.heldout_theta_deg},
                      {"heldout_phi_offset_deg", c.heldout_phi_offset_deg},
                      {"heldout_count", c.heldout_count}};
    doc["seed"] = c.seed;
    doc["output_dir"] = c.output_dir;
    doc["write_images"] = c.write_images;
    return doc.dump(2) + "\n";
}

PipelineConfig config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }
    PipelineConfig c;
    try {
        if (doc.contains("objects")) {
            c.objects.clear();
            for (const auto& object : doc["objects"])
                c.objects.push_back({object.at("name").get<std::string>(),
                                     object.at("source").get<std::string>()});
        }
        if (doc.contains("background"))
            for (int i = 0; i < 3; ++i) c.background[i] = doc["background"].at(i);
        if (doc.contains("query")) c.query = doc["query"];
        if (doc.contains("rig")) {
            const auto& rig = doc["rig"];
            if (rig.contains("theta_deg")) c.theta_deg = rig["theta_deg"];
            if (rig.contains("delta_phi_deg")) c.delta_phi_deg = rig["delta_phi_deg"];
            if (rig.contains("count_per_ring")) c.count_per_ring = rig["count_per_ring"];
            if (rig.contains("radius")) c.radius = rig["radius"];
            if (rig.contains("target")) {
                c.target = {rig["target"].at(0), rig["target"].at(1), rig["target"].at(2)};
            }
            if (rig.contains("intrinsics")) {
                const auto& intr = rig["intrinsics"];
                if (intr.contains("fx")) c.intrinsics.fx = intr["fx"];
                if (intr.contains("fy")) c.intrinsics.fy = intr["fy"];
                if (intr.contains("cx")) c.intrinsics.cx = intr["cx"];
                if (intr.contains("cy")) c.intrinsics.cy = intr["cy"];
                if (intr.contains("width")) c.intrinsics.width = intr["width"];
                if (intr.contains("height")) c.intrinsics.height = intr["height"];
            }
        }
        if (doc.contains("padding_px")) c.padding_px = doc["padding_px"];
        if (doc.contains("carve_resolution")) c.carve_resolution = doc["carve_resolution"];
        if (doc.contains("track_candidates")) c.track_candidates = doc["track_candidates"];
        if (doc.contains("track_min_views")) c.track_min_views = doc["track_min_views"];
        if (doc.contains("clean")) {
            const auto& clean = doc["clean"];
            if (clean.contains("min_face_fraction"))
                c.clean_min_face_fraction = clean["min_face_fraction"];
            if (clean.contains("keep_largest")) c.clean_keep_largest = clean["keep_largest"];
        }
        if (doc.contains("metrics")) {
            const auto& metrics = doc["metrics"];
            if (metrics.contains("samples")) c.metric_samples = metrics["samples"];
            if (metrics.contains("resolution")) c.metric_resolution = metrics["resolution"];
            if (metrics.contains("heldout_theta_deg"))
                c.heldout_theta_deg = metrics["heldout_theta_deg"];
            if (metrics.contains("heldout_phi_offset_deg"))
                c.heldout_phi_offset_deg = metrics["heldout_phi_offset_deg"];
            if (metrics.contains("heldout_count")) c.heldout_count = metrics["heldout_count"];
        }
        if (doc.contains("seed")) c.seed = doc["seed"];
        if (doc.contains("output_dir")) c.output_dir = doc["output_dir"];
        if (doc.contains("write_images")) c.write_images = doc["write_images"];
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid config field: ") + e.what());
    }
    return c;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return config_from_json(text);
}

void save_config(const PipelineConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << config_to_json(config);
}

namespace {

struct StageClock {
    json stage_log = json::array();
    fs::path run_json_path;

    void record(const std::string& name, double seconds) {
        stage_log.push_back({{"stage", name}, {"seconds", seconds}});
    }
    void fail(const std::string& stage, const std::string& message) {
        json doc;
        doc["status"] = "error";
        doc["failed_stage"] = stage;
        doc["error"] = message;
        doc["stages"] = stage_log;
        write_json_file(doc, run_json_path);
    }
};

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();
    const fs::path out_dir(config.output_dir);
    fs::create_directories(out_dir);

    StageClock clock;
    clock.run_json_path = out_dir / "run.json";

    save_config(config, (out_dir / "config.json").string());

    auto run_stage = [&](const std::string& name, auto&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body();
        } catch (const StageError& e) {
            clock.fail(e.stage(), e.what());
            throw;
        } catch (const std::exception& e) {
            clock.fail(name, e.what());
            throw StageError(name, e.what());
        }
        const double dt = seconds_since(t0);
        clock.record(name, dt);
        return dt;
    };

    // Setup: scene + rig (not a timed pipeline stage).
    Scene scene;
    std::vector<RigCamera> rig;
    run_stage("setup", [&] {
        scene = build_scene(config);
        RigSpec spec;
        spec.theta_set_deg = {config.theta_deg};
        spec.delta_phi_deg = config.delta_phi_deg;
        spec.count_per_ring = config.count_per_ring;
        spec.radius = config.radius;
        spec.target = config.target;
        spec.intrinsics = config.intrinsics;
        rig = generate_rig(spec);
        save_rig_json((out_dir / "cameras.json").string(), rig);
    });

    std::vector<Camera> cameras;
    for (const auto& rc : rig) cameras.push_back(rc.camera);

    // Render the input views (counts toward the sparse stage).
    std::vector<RenderOutput> renders;
    const double t_render = run_stage("render", [&] {
        renders = render_rig(scene, cameras);
        if (config.write_images) {
            for (std::size_t k = 0; k < renders.size(); ++k) {
                const int kk = static_cast<int>(k);
                write_ppm(renders[k].rgb, (out_dir / view_name("view", 0, kk, "ppm")).string());
                write_pgm(renders[k].depth, (out_dir / view_name("depth", 0, kk, "pgm")).string());
                for (const auto& [name, mask] : renders[k].per_object_mask)
                    write_mask_pgm(mask, (out_dir / mask_name(name, 0, kk)).string());
            }
        }
    });

    // Segmentation.
    std::string target;
    std::vector<MaskedView> masked_views;
    const double t_segment = run_stage("segmentation", [&] {
        target = resolve_query(scene, Query{config.query});
        masked_views = segment_views(scene, renders, Query{config.query}, config.padding_px);
        json seg;
        seg["query"] = config.query;
        seg["object"] = target;
        seg["padding_px"] = config.padding_px;
        seg["empty_mask_views"] = json::array();
        for (const auto& view : masked_views)
            if (view.empty_raw) seg["empty_mask_views"].push_back(view.camera_index);
        write_json_file(seg, out_dir / "segmentation.json");
        if (config.write_images) {
            for (std::size_t k = 0; k < masked_views.size(); ++k) {
                const int kk = static_cast<int>(k);
                write_ppm(masked_views[k].rgb_masked,
                          (out_dir / view_name("masked", 0, kk, "ppm")).string());
                write_mask_pgm(masked_views[k].padded_mask,
                               (out_dir / view_name("padded_mask", 0, kk, "pgm")).string());
            }
        }
    });

    const TriangleMesh* gt_mesh = nullptr;
    for (const auto& object : scene.objects)
        if (object.name == target) gt_mesh = &object.mesh;

    // Carving uses the raw masks; padding only affects the RGB crops.
    CarveResult carved;
    const double t_carve = run_stage("carve", [&] {
        std::vector<MaskView> views;
        for (std::size_t k = 0; k < renders.size(); ++k)
            views.push_back({renders[k].per_object_mask.at(target), cameras[k]});
        const AABB bounds = bounding_box(*gt_mesh).padded(0.10);
        carved = carve(views, bounds, config.carve_resolution);
    });

    SparseTracks tracks;
    const double t_tracks = run_stage("tracks", [&] {
        std::vector<MaskView> views;
        for (std::size_t k = 0; k < renders.size(); ++k)
            views.push_back({renders[k].per_object_mask.at(target), cameras[k]});
        tracks = sample_tracks(*gt_mesh, views, config.track_candidates,
                               config.track_min_views, config.seed);
        json doc;
        doc["points"] = json::array();
        doc["observations"] = json::array();
        for (std::size_t i = 0; i < tracks.points.points.size(); ++i) {
            const Vec3& p = tracks.points.points[i];
            doc["points"].push_back({p.x, p.y, p.z});
            json obs = json::array();
            for (const auto& o : tracks.per_point_observations[i])
                obs.push_back({o.camera_index, o.u, o.v});
            doc["observations"].push_back(std::move(obs));
        }
        write_json_file(doc, out_dir / "tracks.json");
    });

    json carve_stats;
    carve_stats["resolution"] = config.carve_resolution;
    carve_stats["views_used"] = carved.views_used;
    carve_stats["carved_fraction"] = carved.carved_fraction;
    carve_stats["tracks_kept"] = tracks.points.points.size();
    carve_stats["timings"] = {{"render_s", t_render}, {"carve_s", t_carve}, {"tracks_s", t_tracks}};
    write_json_file(carve_stats, out_dir / "carve_stats.json");

    // Mesh stage: extract + clean + colorize.
    TriangleMesh hull;
    const double t_extract = run_stage("extract", [&] {
        hull = extract_mesh(carved.grid);
        save_mesh(hull, (out_dir / "hull.ply").string());
    });

    CleanResult cleaned;
    const double t_clean = run_stage("clean", [&] {
        cleaned = clean(hull, config.clean_min_face_fraction, config.clean_keep_largest);
        json doc;
        doc["components_found"] = cleaned.report.components_found;
        doc["components_removed"] = cleaned.report.components_removed;
        doc["faces_removed"] = cleaned.report.faces_removed;
        doc["kept_face_fraction"] = cleaned.report.kept_face_fraction;
        write_json_file(doc, out_dir / "clean_report.json");
    });

    ColorizeResult colored;
    const double t_colorize = run_stage("colorize", [&] {
        colored = colorize(cleaned.mesh, masked_views, cameras, carved.grid.cell_size);
        save_mesh(colored.mesh, (out_dir / "recon.ply").string());
    });

    // Evaluation: geometry in the GT-anchored frame, texture on held-out views.
    MetricsReport report;
    run_stage("evaluate", [&] {
        GeomMetricConfig geom_config;
        geom_config.samples = config.metric_samples;
        geom_config.resolution = config.metric_resolution;
        geom_config.seed = config.seed;
        report.geom = evaluate_geometry(colored.mesh, *gt_mesh, geom_config);

        const double heldout_delta = 360.0 / config.heldout_count;
        std::vector<RigCamera> heldout_rig;
        for (int k = 0; k < config.heldout_count; ++k) {
            SphericalPose pose;
            pose.theta_deg = config.heldout_theta_deg;
            pose.phi_deg = config.heldout_phi_offset_deg + k * heldout_delta;
            pose.radius = config.radius;
            pose.target = config.target;
            heldout_rig.push_back({pose_to_camera(pose, config.intrinsics), pose});
        }

        Scene gt_scene;
        gt_scene.background = config.background;
        gt_scene.objects.push_back({target, *gt_mesh});
        Scene recon_scene;
        recon_scene.background = config.background;
        recon_scene.objects.push_back({"recon", colored.mesh});

        std::vector<ImageBuffer> gt_views, recon_views;
        SceneRaycaster gt_caster(gt_scene), recon_caster(recon_scene);
        for (std::size_t k = 0; k < heldout_rig.size(); ++k) {
            gt_views.push_back(render_with(gt_caster, heldout_rig[k].camera).rgb);
            recon_views.push_back(render_with(recon_caster, heldout_rig[k].camera).rgb);
            if (config.write_images) {
                const int kk = static_cast<int>(k);
                write_ppm(gt_views.back(),
                          (out_dir / view_name("heldout_gt", 0, kk, "ppm")).string());
                write_ppm(recon_views.back(),
                          (out_dir / view_name("heldout_recon", 0, kk, "ppm")).string());
            }
        }
        report.texture = evaluate_texture(recon_views, gt_views);

        json metrics;
        metrics["cd"] = report.geom.chamfer;
        metrics["iou"] = report.geom.iou;
        metrics["psnr_db"] = json_or_inf(report.texture.psnr_db);
        metrics["ssim"] = report.texture.ssim;
        metrics["lpips"] = nullptr;  // supplied externally via eval-tex --features
        metrics["config"] = {{"samples_per_mesh", report.geom.samples_per_mesh},
                             {"voxel_resolution", report.geom.voxel_resolution},
                             {"frame", "gt_normalized"},
                             {"cd_points", "surface_samples"},
                             {"heldout_theta_deg", config.heldout_theta_deg},
                             {"heldout_count", config.heldout_count},
                             {"infinite_psnr_pairs", report.texture.infinite_psnr_pairs},
                             {"texture_pairs", report.texture.pairs}};
        write_json_file(metrics, out_dir / "metrics.json");
    });

    PipelineResult result;
    result.mesh = colored.mesh;
    result.metrics = report;
    result.clean_report = cleaned.report;
    result.carved_fraction = carved.carved_fraction;
    result.uncolored_fraction = colored.uncolored_fraction;
    result.tracks_kept = static_cast<int>(tracks.points.points.size());
    result.timings.segmentation_s = t_segment;
    result.timings.sparse_s = t_render + t_carve + t_tracks;
    result.timings.mesh_s = t_extract + t_clean + t_colorize;
    result.timings.total_s = seconds_since(t_start);

    json run;
    run["status"] = "ok";
    run["stages"] = clock.stage_log;
    run["timings"] = {{"segmentation_s", result.timings.segmentation_s},
                      {"sparse_s", result.timings.sparse_s},
                      {"mesh_s", result.timings.mesh_s},
                      {"total_s", result.timings.total_s}};
    run["carved_fraction"] = result.carved_fraction;
    run["uncolored_fraction"] = result.uncolored_fraction;
    run["tracks_kept"] = result.tracks_kept;
    write_json_file(run, out_dir / "run.json");
    return result;
}

}  // namespace hullbench
