// hullbench: synthetic multi-view rendering, query-driven masking,
// visual-hull reconstruction, cleaning, and geometry/texture evaluation.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hullbench/errors.hpp"
#include "hullbench/image.hpp"
#include "hullbench/mesh_io.hpp"
#include "hullbench/metrics.hpp"
#include "hullbench/pipeline.hpp"
#include "hullbench/reconstruct.hpp"
#include "hullbench/scenes.hpp"
#include "hullbench/segment.hpp"
#include "hullbench/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hullbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;

Vec3 parse_vec3(const std::vector<double>& v) {
    if (v.size() != 3) throw ConfigError("expected 3 components");
    return {v[0], v[1], v[2]};
}

std::vector<std::string> sorted_files(const fs::path& dir, const std::string& prefix,
                                      const std::string& ext) {
    if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) == 0 && name.size() > ext.size() &&
            name.compare(name.size() - ext.size(), ext.size(), ext) == 0)
            files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    return files;
}

void write_json_file(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << doc.dump(2) << "\n";
}

Scene scene_from_flags(const std::vector<std::string>& object_flags) {
    if (object_flags.empty()) throw ConfigError("no --object given");
    Scene scene;
    for (const auto& flag : object_flags) {
        const auto eq = flag.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--object expects name=source, got '" + flag + "'");
        scene.objects.push_back(
            {flag.substr(0, eq), resolve_mesh_source(flag.substr(eq + 1))});
    }
    validate_scene(scene);
    return scene;
}

// Fallback carve bounds without ground truth: intersect per-view AABBs of
// the back-projected mask rectangles, sampled at near and far depths.
AABB bounds_from_masks(const std::vector<MaskView>& views,
                       const std::vector<RigCamera>& rig) {
    AABB intersection{{-1e30, -1e30, -1e30}, {1e30, 1e30, 1e30}};
    bool constrained = false;
    for (std::size_t v = 0; v < views.size(); ++v) {
        const BinaryMask& mask = views[v].mask;
        int u0 = mask.width, u1 = -1, v0 = mask.height, v1 = -1;
        for (int y = 0; y < mask.height; ++y)
            for (int x = 0; x < mask.width; ++x)
                if (mask.get(x, y)) {
                    u0 = std::min(u0, x);
                    u1 = std::max(u1, x + 1);
                    v0 = std::min(v0, y);
                    v1 = std::max(v1, y + 1);
                }
        if (u1 < 0) continue;  // empty mask constrains nothing here
        const double radius = rig[v].pose.radius;
        AABB view_box = AABB::empty();
        for (double u : {static_cast<double>(u0), static_cast<double>(u1)}) {
            for (double vv : {static_cast<double>(v0), static_cast<double>(v1)}) {
                const Ray ray = pixel_ray(views[v].camera, u, vv);
                view_box.extend(ray.origin + ray.dir * (0.25 * radius));
                view_box.extend(ray.origin + ray.dir * (2.0 * radius));
            }
        }
        intersection.min = max(intersection.min, view_box.min);
        intersection.max = min(intersection.max, view_box.max);
        constrained = true;
    }
    if (!constrained || !intersection.valid())
        throw ConfigError("cannot derive carve bounds from the masks; pass --gt");
    return intersection;
}

int cmd_rig(const std::vector<double>& thetas, double delta_phi, int count,
            double radius, const std::vector<double>& target, CameraIntrinsics intr,
            const std::string& out) {
    RigSpec spec;
    spec.theta_set_deg = thetas;
    spec.delta_phi_deg = delta_phi;
    spec.count_per_ring = count;
    spec.radius = radius;
    spec.target = parse_vec3(target);
    spec.intrinsics = intr;
    const auto rig = generate_rig(spec);
    save_rig_json(out, rig);
    std::cout << "wrote " << rig.size() << " cameras to " << out << "\n";
    return kExitOk;
}

int cmd_render(const std::vector<std::string>& object_flags, const std::string& cameras,
               const std::string& out_dir) {
    const Scene scene = scene_from_flags(object_flags);
    const auto rig = load_rig_json(cameras);
    fs::create_directories(out_dir);
    std::vector<Camera> cams;
    for (const auto& rc : rig) cams.push_back(rc.camera);
    const auto renders = render_rig(scene, cams);
    char name[160];
    for (std::size_t k = 0; k < renders.size(); ++k) {
        std::snprintf(name, sizeof(name), "view_0_%03zu.ppm", k);
        write_ppm(renders[k].rgb, (fs::path(out_dir) / name).string());
        std::snprintf(name, sizeof(name), "depth_0_%03zu.pgm", k);
        write_pgm(renders[k].depth, (fs::path(out_dir) / name).string());
        for (const auto& [obj, mask] : renders[k].per_object_mask) {
            std::snprintf(name, sizeof(name), "mask_%s_0_%03zu.pgm", obj.c_str(), k);
            write_mask_pgm(mask, (fs::path(out_dir) / name).string());
        }
    }
    std::cout << "rendered " << renders.size() << " views to " << out_dir << "\n";
    return kExitOk;
}

int cmd_segment(const std::string& renders_dir, const std::string& query, int padding,
                const std::string& out_dir) {
    // Object names come from the mask filenames: mask_<object>_<ring>_<k>.pgm.
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(renders_dir)) {
        const std::string file = entry.path().filename().string();
        if (file.rfind("mask_", 0) != 0) continue;
        const auto tail = file.find_last_of('_');
        const auto ring_sep = file.find_last_of('_', tail - 1);
        const std::string object = file.substr(5, ring_sep - 5);
        if (std::find(names.begin(), names.end(), object) == names.end())
            names.push_back(object);
    }
    std::sort(names.begin(), names.end());
    if (names.empty()) throw ConfigError("no mask_*.pgm files in " + renders_dir);

    // Resolve the query against the discovered names.
    Scene probe;
    for (const auto& n : names) probe.objects.push_back({n, TriangleMesh{}});
    const std::string target = resolve_query(probe, Query{query});

    const auto views = sorted_files(renders_dir, "view_", ".ppm");
    const auto masks = sorted_files(renders_dir, "mask_" + target + "_", ".pgm");
    if (views.size() != masks.size())
        throw ConfigError("view/mask count mismatch in " + renders_dir);

    fs::create_directories(out_dir);
    json seg;
    seg["query"] = query;
    seg["object"] = target;
    seg["padding_px"] = padding;
    seg["empty_mask_views"] = json::array();
    char name[160];
    for (std::size_t k = 0; k < views.size(); ++k) {
        const ImageBuffer rgb = read_ppm(views[k]);
        const BinaryMask raw = read_mask_pgm(masks[k]);
        const BinaryMask padded = pad_mask(raw, padding);
        ImageBuffer masked = rgb;
        for (int y = 0; y < raw.height; ++y)
            for (int x = 0; x < raw.width; ++x)
                if (!padded.get(x, y))
                    for (int c = 0; c < 3; ++c) masked.at(x, y, c) = 0.0;
        if (!raw.any()) seg["empty_mask_views"].push_back(k);
        std::snprintf(name, sizeof(name), "masked_0_%03zu.ppm", k);
        write_ppm(masked, (fs::path(out_dir) / name).string());
        std::snprintf(name, sizeof(name), "padded_mask_0_%03zu.pgm", k);
        write_mask_pgm(padded, (fs::path(out_dir) / name).string());
    }
    write_json_file(seg, (fs::path(out_dir) / "segmentation.json").string());
    std::cout << "segmented " << views.size() << " views (object: " << target << ")\n";
    return kExitOk;
}

int cmd_reconstruct(const std::string& cameras, const std::string& masks_dir,
                    const std::string& object, int resolution, int track_candidates,
                    int min_views, std::uint64_t seed, const std::string& gt,
                    const std::string& out_dir) {
    const auto rig = load_rig_json(cameras);
    const auto mask_files = sorted_files(masks_dir, "mask_" + object + "_", ".pgm");
    if (mask_files.size() != rig.size())
        throw ConfigError("found " + std::to_string(mask_files.size()) + " masks for " +
                          std::to_string(rig.size()) + " cameras");

    std::vector<MaskView> views;
    for (std::size_t k = 0; k < rig.size(); ++k)
        views.push_back({read_mask_pgm(mask_files[k]), rig[k].camera});

    std::optional<TriangleMesh> gt_mesh;
    if (!gt.empty()) gt_mesh = resolve_mesh_source(gt);

    const AABB bounds = gt_mesh ? bounding_box(*gt_mesh).padded(0.10)
                                : bounds_from_masks(views, rig);

    fs::create_directories(out_dir);
    const CarveResult carved = carve(views, bounds, resolution);
    const TriangleMesh hull = extract_mesh(carved.grid);
    save_mesh(hull, (fs::path(out_dir) / "hull.ply").string());

    const TriangleMesh& track_surface = gt_mesh ? *gt_mesh : hull;
    const SparseTracks tracks =
        sample_tracks(track_surface, views, track_candidates, min_views, seed);
    json tracks_doc;
    tracks_doc["points"] = json::array();
    tracks_doc["observations"] = json::array();
    for (std::size_t i = 0; i < tracks.points.points.size(); ++i) {
        const Vec3& p = tracks.points.points[i];
        tracks_doc["points"].push_back({p.x, p.y, p.z});
        json obs = json::array();
        for (const auto& o : tracks.per_point_observations[i])
            obs.push_back({o.camera_index, o.u, o.v});
        tracks_doc["observations"].push_back(std::move(obs));
    }
    write_json_file(tracks_doc, (fs::path(out_dir) / "tracks.json").string());

    json stats;
    stats["resolution"] = resolution;
    stats["views_used"] = carved.views_used;
    stats["carved_fraction"] = carved.carved_fraction;
    stats["tracks_kept"] = tracks.points.points.size();
    stats["tracks_surface"] = gt_mesh ? "ground_truth" : "hull";
    write_json_file(stats, (fs::path(out_dir) / "carve_stats.json").string());
    std::cout << "hull: " << hull.faces.size() << " faces, carved fraction "
              << carved.carved_fraction << "\n";
    return kExitOk;
}

int cmd_clean(const std::string& in, const std::string& out, double min_face_fraction,
              bool keep_largest, const std::string& report_path) {
    const TriangleMesh mesh = load_mesh(in);
    const CleanResult result = clean(mesh, min_face_fraction, keep_largest);
    save_mesh(result.mesh, out);
    json doc;
    doc["components_found"] = result.report.components_found;
    doc["components_removed"] = result.report.components_removed;
    doc["faces_removed"] = result.report.faces_removed;
    doc["kept_face_fraction"] = result.report.kept_face_fraction;
    if (!report_path.empty()) write_json_file(doc, report_path);
    std::cout << "removed " << result.report.components_removed << " of "
              << result.report.components_found << " components\n";
    return kExitOk;
}

int cmd_eval_geom(const std::string& recon, const std::string& gt, int samples,
                  int resolution, std::uint64_t seed, const std::string& out) {
    GeomMetricConfig config;
    config.samples = samples;
    config.resolution = resolution;
    config.seed = seed;
    const GeomMetrics metrics =
        evaluate_geometry(resolve_mesh_source(recon), resolve_mesh_source(gt), config);
    json doc;
    doc["cd"] = metrics.chamfer;
    doc["iou"] = metrics.iou;
    doc["psnr_db"] = nullptr;
    doc["ssim"] = nullptr;
    doc["lpips"] = nullptr;
    doc["config"] = {{"samples_per_mesh", metrics.samples_per_mesh},
                     {"voxel_resolution", metrics.voxel_resolution},
                     {"frame", "gt_normalized"},
                     {"cd_points", "surface_samples"}};
    write_json_file(doc, out);
    std::cout << "cd " << format_metric(metrics.chamfer) << "  iou "
              << format_metric(metrics.iou) << "\n";
    return kExitOk;
}

int cmd_eval_tex(const std::string& recon_dir, const std::string& gt_dir,
                 const std::string& features, const std::string& out) {
    const auto recon_files = sorted_files(recon_dir, "", ".ppm");
    const auto gt_files = sorted_files(gt_dir, "", ".ppm");
    if (recon_files.size() != gt_files.size())
        throw ConfigError("render count mismatch between " + recon_dir + " and " + gt_dir);
    if (recon_files.empty()) throw ConfigError("no .ppm files to compare");

    std::vector<ImageBuffer> recon, gt;
    for (const auto& f : recon_files) recon.push_back(read_ppm(f));
    for (const auto& f : gt_files) gt.push_back(read_ppm(f));
    TextureMetrics metrics = evaluate_texture(recon, gt);
    if (!features.empty()) {
        const auto [fx, fy] = load_feature_pair(features);
        metrics.lpips = lpips_from_features(fx, fy);
    }

    json doc;
    doc["cd"] = nullptr;
    doc["iou"] = nullptr;
    doc["psnr_db"] = std::isinf(metrics.psnr_db) ? json("inf") : json(metrics.psnr_db);
    doc["ssim"] = metrics.ssim;
    doc["lpips"] = metrics.lpips ? json(*metrics.lpips) : json(nullptr);
    doc["config"] = {{"pairs", metrics.pairs},
                     {"infinite_psnr_pairs", metrics.infinite_psnr_pairs}};
    write_json_file(doc, out);
    std::cout << "psnr " << format_metric(metrics.psnr_db) << " dB  ssim "
              << format_metric(metrics.ssim);
    if (metrics.lpips) std::cout << "  lpips " << format_metric(*metrics.lpips);
    std::cout << "\n";
    return kExitOk;
}

SweepResult parse_sweep_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sweep file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    SweepResult result;
    result.kind = doc.value("kind", "images");
    for (const auto& r : doc.at("rows")) {
        SweepRow row;
        row.n_images = r.at("n_images");
        row.theta_deg = r.at("theta_deg");
        row.delta_phi_deg = r.at("delta_phi_deg");
        auto get_opt = [&](const char* key) -> std::optional<double> {
            if (!r.contains(key) || r[key].is_null()) return std::nullopt;
            if (r[key].is_string())
                return r[key] == "inf" ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
            return r[key].get<double>();
        };
        row.cd = get_opt("cd");
        row.iou = get_opt("iou");
        row.psnr_db = get_opt("psnr_db");
        row.ssim = get_opt("ssim");
        row.lpips = get_opt("lpips");
        row.timings.segmentation_s = r.value("seg_s", 0.0);
        row.timings.sparse_s = r.value("sparse_s", 0.0);
        row.timings.mesh_s = r.value("mesh_s", 0.0);
        row.timings.total_s = r.value("total_s", 0.0);
        row.status = r.value("status", "ok");
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hullbench: few-shot visual-hull reconstruction benchmark"};
    app.require_subcommand(1);

    // -- rig --------------------------------------------------------------
    auto* rig = app.add_subcommand("rig", "generate a spherical camera rig");
    std::vector<double> rig_thetas{45.0};
    double rig_dphi = 10.0, rig_radius = 2.5;
    int rig_count = 36;
    std::vector<double> rig_target{0, 0, 0};
    CameraIntrinsics rig_intr;
    std::string rig_out = "cameras.json";
    rig->add_option("--theta", rig_thetas, "polar angles in degrees");
    rig->add_option("--delta-phi", rig_dphi, "azimuthal step in degrees");
    rig->add_option("--count", rig_count, "cameras per ring");
    rig->add_option("--radius", rig_radius, "rig radius");
    rig->add_option("--target", rig_target, "look-at point (3 values)")->expected(3);
    rig->add_option("--fx", rig_intr.fx);
    rig->add_option("--fy", rig_intr.fy);
    rig->add_option("--width", rig_intr.width);
    rig->add_option("--height", rig_intr.height);
    rig->add_option("--out", rig_out, "output cameras.json");

    // -- render -----------------------------------------------------------
    auto* render_cmd = app.add_subcommand("render", "render views of a scene");
    std::vector<std::string> render_objects;
    std::string render_cameras = "cameras.json", render_out = "renders";
    render_cmd->add_option("--object", render_objects,
                           "name=source (source: builtin:<name> or mesh path)");
    render_cmd->add_option("--cameras", render_cameras, "cameras.json from 'rig'");
    render_cmd->add_option("--out", render_out, "output directory");

    // -- segment ----------------------------------------------------------
    auto* segment_cmd = app.add_subcommand("segment", "query-driven view masking");
    std::string seg_renders = "renders", seg_query, seg_out = "segmented";
    int seg_padding = 50;
    segment_cmd->add_option("--renders", seg_renders, "directory from 'render'");
    segment_cmd->add_option("--query", seg_query, "object query text")->required();
    segment_cmd->add_option("--padding", seg_padding, "mask padding in pixels");
    segment_cmd->add_option("--out", seg_out, "output directory");

    // -- reconstruct --------------------------------------------------------
    auto* recon_cmd = app.add_subcommand("reconstruct", "visual-hull carving + tracks");
    std::string rc_cameras = "cameras.json", rc_masks = "renders", rc_object;
    std::string rc_gt, rc_out = "recon";
    int rc_resolution = 128, rc_candidates = 5000, rc_min_views = 2;
    std::uint64_t rc_seed = 1;
    recon_cmd->add_option("--cameras", rc_cameras);
    recon_cmd->add_option("--masks-dir", rc_masks, "directory with mask_<object>_*.pgm");
    recon_cmd->add_option("--object", rc_object, "object name used in mask filenames")
        ->required();
    recon_cmd->add_option("--resolution", rc_resolution, "carve grid resolution");
    recon_cmd->add_option("--track-candidates", rc_candidates);
    recon_cmd->add_option("--min-views", rc_min_views);
    recon_cmd->add_option("--seed", rc_seed);
    recon_cmd->add_option("--gt", rc_gt, "ground-truth mesh (bounds + track surface)");
    recon_cmd->add_option("--out", rc_out, "output directory");

    // -- clean --------------------------------------------------------------
    auto* clean_cmd = app.add_subcommand("clean", "remove small floater components");
    std::string cl_in, cl_out, cl_report = "clean_report.json";
    double cl_fraction = 0.01;
    bool cl_largest = false;
    clean_cmd->add_option("--in", cl_in, "input mesh")->required();
    clean_cmd->add_option("--out", cl_out, "output mesh")->required();
    clean_cmd->add_option("--min-face-fraction", cl_fraction);
    clean_cmd->add_flag("--keep-largest", cl_largest);
    clean_cmd->add_option("--report", cl_report, "clean_report.json path");

    // -- eval-geom ------------------------------------------------------------
    auto* eg = app.add_subcommand("eval-geom", "chamfer distance + volumetric IoU");
    std::string eg_recon, eg_gt, eg_out = "metrics.json";
    int eg_samples = 100000, eg_resolution = 128;
    std::uint64_t eg_seed = 1;
    eg->add_option("--recon", eg_recon)->required();
    eg->add_option("--gt", eg_gt)->required();
    eg->add_option("--samples", eg_samples);
    eg->add_option("--resolution", eg_resolution);
    eg->add_option("--seed", eg_seed);
    eg->add_option("--out", eg_out);

    // -- eval-tex -------------------------------------------------------------
    auto* et = app.add_subcommand("eval-tex", "PSNR/SSIM on paired renders");
    std::string et_recon, et_gt, et_features, et_out = "metrics.json";
    et->add_option("--recon-dir", et_recon)->required();
    et->add_option("--gt-dir", et_gt)->required();
    et->add_option("--features", et_features, "LPIPSFS1 feature-pair file");
    et->add_option("--out", et_out);

    // -- run --------------------------------------------------------------
    auto* run_cmd = app.add_subcommand("run", "full pipeline from a config");
    std::string run_config;
    std::optional<std::string> run_query, run_out;
    std::optional<int> run_padding, run_count, run_resolution;
    std::optional<double> run_theta, run_dphi;
    std::optional<std::uint64_t> run_seed;
    run_cmd->add_option("--config", run_config, "pipeline config JSON");
    run_cmd->add_option("--query", run_query);
    run_cmd->add_option("--padding", run_padding);
    run_cmd->add_option("--theta", run_theta);
    run_cmd->add_option("--count", run_count);
    run_cmd->add_option("--delta-phi", run_dphi);
    run_cmd->add_option("--resolution", run_resolution);
    run_cmd->add_option("--seed", run_seed);
    run_cmd->add_option("--out", run_out, "output directory");

    // -- sweep --------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweeps over pipeline runs");
    std::string sw_config, sw_kind = "images", sw_out = "sweep_out";
    std::vector<int> sw_counts{4, 8, 12, 18, 36};
    std::vector<double> sw_thetas{30.0, 45.0, 75.0};
    std::vector<std::string> sw_pairs{"4:10", "4:90", "12:10", "12:30", "36:10"};
    bool sw_full_ring = true, sw_plotdata = false, sw_no_timings = false;
    std::string sw_format = "csv";
    sweep_cmd->add_option("--config", sw_config, "base pipeline config JSON");
    sweep_cmd->add_option("--kind", sw_kind, "images|theta|overlap")
        ->check(CLI::IsMember({"images", "theta", "overlap"}));
    sweep_cmd->add_option("--counts", sw_counts, "image counts (kind=images)");
    sweep_cmd->add_flag("--full-ring,!--arc", sw_full_ring,
                        "spread counts over 360 degrees");
    sweep_cmd->add_option("--thetas", sw_thetas, "polar angles (kind=theta)");
    sweep_cmd->add_option("--pairs", sw_pairs, "n:delta_phi pairs (kind=overlap)");
    sweep_cmd->add_option("--format", sw_format)->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_flag("--plotdata", sw_plotdata);
    sweep_cmd->add_flag("--no-timings", sw_no_timings);
    sweep_cmd->add_option("--out", sw_out, "output directory");

    // -- report -------------------------------------------------------------
    auto* report_cmd = app.add_subcommand("report", "re-emit a sweep JSON as CSV/JSON");
    std::string rp_in, rp_out = "report", rp_format = "csv";
    bool rp_plotdata = false, rp_no_timings = false;
    report_cmd->add_option("--in", rp_in, "sweep .json written by 'sweep'")->required();
    report_cmd->add_option("--format", rp_format)->check(CLI::IsMember({"csv", "json"}));
    report_cmd->add_flag("--plotdata", rp_plotdata);
    report_cmd->add_flag("--no-timings", rp_no_timings);
    report_cmd->add_option("--out", rp_out, "output stem");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (rig->parsed())
            return cmd_rig(rig_thetas, rig_dphi, rig_count, rig_radius, rig_target,
                           rig_intr, rig_out);
        if (render_cmd->parsed())
            return cmd_render(render_objects, render_cameras, render_out);
        if (segment_cmd->parsed())
            return cmd_segment(seg_renders, seg_query, seg_padding, seg_out);
        if (recon_cmd->parsed())
            return cmd_reconstruct(rc_cameras, rc_masks, rc_object, rc_resolution,
                                   rc_candidates, rc_min_views, rc_seed, rc_gt, rc_out);
        if (clean_cmd->parsed())
            return cmd_clean(cl_in, cl_out, cl_fraction, cl_largest, cl_report);
        if (eg->parsed())
            return cmd_eval_geom(eg_recon, eg_gt, eg_samples, eg_resolution, eg_seed,
                                 eg_out);
        if (et->parsed()) return cmd_eval_tex(et_recon, et_gt, et_features, et_out);

        if (run_cmd->parsed()) {
            PipelineConfig config =
                run_config.empty() ? PipelineConfig{} : load_config(run_config);
            if (run_query) config.query = *run_query;
            if (run_padding) config.padding_px = *run_padding;
            if (run_theta) config.theta_deg = *run_theta;
            if (run_count) config.count_per_ring = *run_count;
            if (run_dphi) config.delta_phi_deg = *run_dphi;
            if (run_resolution) config.carve_resolution = *run_resolution;
            if (run_seed) config.seed = *run_seed;
            if (run_out) config.output_dir = *run_out;
            const PipelineResult result = run_pipeline(config);
            std::cout << "cd " << format_metric(result.metrics.geom.chamfer) << "  iou "
                      << format_metric(result.metrics.geom.iou) << "  ssim "
                      << format_metric(result.metrics.texture.ssim) << "  ("
                      << config.output_dir << ")\n";
            return kExitOk;
        }

        if (sweep_cmd->parsed()) {
            PipelineConfig base =
                sw_config.empty() ? PipelineConfig{} : load_config(sw_config);
            base.output_dir = sw_out;
            SweepResult result;
            if (sw_kind == "images") {
                result = sweep_image_count(base, sw_counts, sw_full_ring);
            } else if (sw_kind == "theta") {
                result = sweep_theta(base, sw_thetas);
            } else {
                std::vector<std::pair<int, double>> pairs;
                for (const auto& text : sw_pairs) {
                    const auto sep = text.find(':');
                    if (sep == std::string::npos)
                        throw ConfigError("--pairs expects n:delta_phi, got '" + text + "'");
                    pairs.emplace_back(std::stoi(text.substr(0, sep)),
                                       std::stod(text.substr(sep + 1)));
                }
                result = sweep_overlap(base, pairs);
            }
            const std::string stem = (fs::path(sw_out) / ("sweep_" + sw_kind)).string();
            emit_report(result, stem,
                        sw_format == "csv" ? ReportFormat::Csv : ReportFormat::Json,
                        sw_plotdata, !sw_no_timings);
            // Always keep the JSON form around so 'report' can re-emit it.
            emit_report(result, stem, ReportFormat::Json, false, !sw_no_timings);
            int failed = 0;
            for (const auto& row : result.rows)
                if (row.status != "ok") ++failed;
            std::cout << result.rows.size() << " rows (" << failed << " failed) -> "
                      << stem << "." << sw_format << "\n";
            return failed == 0 ? kExitOk : kExitStage;
        }

        if (report_cmd->parsed()) {
            const SweepResult result = parse_sweep_json(rp_in);
            emit_report(result, rp_out,
                        rp_format == "csv" ? ReportFormat::Csv : ReportFormat::Json,
                        rp_plotdata, !rp_no_timings);
            std::cout << "wrote " << rp_out << "." << rp_format << "\n";
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const StageError& e) {
        std::cerr << "stage failure: " << e.what() << "\n";
        return kExitStage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStage;
    }
    return kExitOk;
}
