#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#ifdef HULLBENCH_CLI_PATH
#include <sys/wait.h>
#endif

#include "hullbench/errors.hpp"
#include "hullbench/image.hpp"
#include "hullbench/metrics.hpp"
#include "hullbench/pipeline.hpp"
#include "hullbench/sweep.hpp"

using namespace hullbench;
namespace fs = std::filesystem;

namespace {

fs::path work_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "hullbench_harness" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Small, fast configuration: coarse grid, small images, sphere scene.
PipelineConfig tiny_config(const std::string& out_name) {
    PipelineConfig config;
    config.objects = {{"ball", "builtin:sphere"}};
    config.query = "ball";
    config.theta_deg = 45.0;
    config.count_per_ring = 6;
    config.delta_phi_deg = 60.0;
    config.intrinsics.width = 96;
    config.intrinsics.height = 96;
    config.intrinsics.fx = 110.0;
    config.intrinsics.fy = 110.0;
    config.intrinsics.cx = 48.0;
    config.intrinsics.cy = 48.0;
    config.carve_resolution = 48;
    config.track_candidates = 300;
    config.metric_samples = 4000;
    config.metric_resolution = 48;
    config.heldout_count = 4;
    config.padding_px = 8;
    config.output_dir = work_dir(out_name).string();
    return config;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("pipeline runs end to end and writes every artifact") {
    const PipelineConfig config = tiny_config("full_run");
    const PipelineResult result = run_pipeline(config);

    // Six coarse views at 96 px leave a loose hull; the acceptance suite
    // checks the real-resolution numbers.
    CHECK(result.metrics.geom.iou > 0.3);
    CHECK(result.metrics.geom.chamfer < 0.05);
    CHECK(result.metrics.texture.ssim > 0.5);
    CHECK(result.timings.total_s > 0.0);
    CHECK(result.timings.total_s + 1e-6 >= result.timings.segmentation_s +
                                              result.timings.sparse_s +
                                              result.timings.mesh_s);

    const fs::path dir(config.output_dir);
    for (const char* name :
         {"config.json", "cameras.json", "segmentation.json", "carve_stats.json",
          "tracks.json", "hull.ply", "clean_report.json", "recon.ply", "metrics.json",
          "run.json", "view_0_000.ppm", "mask_ball_0_000.pgm", "masked_0_000.ppm"}) {
        CAPTURE(name);
        CHECK(fs::exists(dir / name));
    }
}

TEST_CASE("identical configs give byte-identical metrics and meshes") {
    PipelineConfig a = tiny_config("det_a");
    PipelineConfig b = tiny_config("det_b");
    run_pipeline(a);
    run_pipeline(b);
    CHECK(slurp(fs::path(a.output_dir) / "metrics.json") ==
          slurp(fs::path(b.output_dir) / "metrics.json"));
    CHECK(slurp(fs::path(a.output_dir) / "recon.ply") ==
          slurp(fs::path(b.output_dir) / "recon.ply"));
    CHECK(slurp(fs::path(a.output_dir) / "hull.ply") ==
          slurp(fs::path(b.output_dir) / "hull.ply"));
}

TEST_CASE("a query with no match aborts at the segmentation stage") {
    PipelineConfig config = tiny_config("bad_query");
    config.query = "unicorn";
    CHECK_THROWS_AS(run_pipeline(config), StageError);
    try {
        run_pipeline(config);
    } catch (const StageError& e) {
        CHECK(e.stage() == "segmentation");
    }
    const std::string run = slurp(fs::path(config.output_dir) / "run.json");
    CHECK(run.find("\"status\": \"error\"") != std::string::npos);
    CHECK(run.find("segmentation") != std::string::npos);
}

TEST_CASE("config JSON round-trips including overrides") {
    PipelineConfig config = tiny_config("config_io");
    config.padding_px = 17;
    config.clean_keep_largest = true;
    config.seed = 99;
    const std::string text = config_to_json(config);
    const PipelineConfig parsed = config_from_json(text);
    CHECK(parsed.padding_px == 17);
    CHECK(parsed.clean_keep_largest == true);
    CHECK(parsed.seed == 99);
    CHECK(parsed.intrinsics.width == 96);
    CHECK(parsed.objects.size() == 1);
    CHECK(parsed.objects[0].name == "ball");

    CHECK_THROWS_AS(config_from_json("{ not json"), ConfigError);
}

TEST_CASE("image-count sweep rows are ordered and IoU does not regress") {
    PipelineConfig base = tiny_config("sweep_images");
    base.write_images = false;
    const SweepResult sweep = sweep_image_count(base, {2, 6}, true);
    REQUIRE(sweep.rows.size() == 2);
    CHECK(sweep.rows[0].n_images == 2);
    CHECK(sweep.rows[1].n_images == 6);
    CHECK(sweep.rows[0].delta_phi_deg == doctest::Approx(180.0));
    CHECK(sweep.rows[1].delta_phi_deg == doctest::Approx(60.0));
    REQUIRE(sweep.rows[0].status == "ok");
    REQUIRE(sweep.rows[1].status == "ok");
    CHECK(*sweep.rows[1].iou >= *sweep.rows[0].iou - 0.02);
}

TEST_CASE("failed sweep rows carry an error status, others proceed") {
    PipelineConfig base = tiny_config("sweep_fail");
    base.write_images = false;
    base.query = "nothing";
    const SweepResult sweep = sweep_image_count(base, {2}, true);
    REQUIRE(sweep.rows.size() == 1);
    CHECK(sweep.rows[0].status.rfind("error:", 0) == 0);
    CHECK_FALSE(sweep.rows[0].cd.has_value());

    // Reports render the failed row with empty metric fields.
    const std::string csv = sweep_to_csv(sweep, false);
    CHECK(csv.find(",,,,") != std::string::npos);
    CHECK(csv.find("error:") != std::string::npos);
}

TEST_CASE("CSV and JSON reports agree field for field") {
    PipelineConfig base = tiny_config("sweep_formats");
    base.write_images = false;
    const SweepResult sweep = sweep_image_count(base, {3}, true);
    REQUIRE(sweep.rows[0].status == "ok");

    const std::string csv = sweep_to_csv(sweep, false);
    const std::string json_text = sweep_to_json(sweep, false);

    // Header + one row.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    const std::string cd = format_metric(*sweep.rows[0].cd);
    const std::string iou = format_metric(*sweep.rows[0].iou);
    CHECK(csv.find("," + cd + "," + iou + ",") != std::string::npos);
    CHECK(json_text.find("\"cd\":") != std::string::npos);

    // The same sweep re-serialized is byte-identical (timings excluded).
    CHECK(sweep_to_csv(sweep, false) == csv);
    CHECK(sweep_to_json(sweep, false) == json_text);
}

TEST_CASE("emit_report writes the requested files and plot data") {
    PipelineConfig base = tiny_config("sweep_emit");
    base.write_images = false;
    const SweepResult sweep = sweep_image_count(base, {3}, true);
    const std::string stem = (fs::path(base.output_dir) / "report").string();
    emit_report(sweep, stem, ReportFormat::Csv, true, false);
    CHECK(fs::exists(stem + ".csv"));
    CHECK(fs::exists(stem + "_plot_iou.csv"));
    CHECK(fs::exists(stem + "_plot_cd.csv"));
    emit_report(sweep, stem, ReportFormat::Json, false, true);
    CHECK(fs::exists(stem + ".json"));

    CHECK_THROWS(emit_report(SweepResult{}, stem, ReportFormat::Csv, false, false));
}

TEST_CASE("theta sweeps mirror the figurine protocols row for row") {
    PipelineConfig base = tiny_config("sweep_theta_sets");
    base.write_images = false;
    base.count_per_ring = 4;

    const SweepResult cat = sweep_theta(base, {30.0, 45.0, 75.0});
    REQUIRE(cat.rows.size() == 3);
    CHECK(cat.rows[0].theta_deg == 30.0);
    CHECK(cat.rows[2].theta_deg == 75.0);
    for (const auto& row : cat.rows) {
        CHECK(row.status == "ok");
        CHECK(row.delta_phi_deg == doctest::Approx(90.0));  // full ring of 4
    }

    const SweepResult dog = sweep_theta(base, {45.0, 90.0});
    REQUIRE(dog.rows.size() == 2);
    CHECK(dog.rows[1].theta_deg == 90.0);
    CHECK(dog.rows[1].status == "ok");
}

#ifdef HULLBENCH_CLI_PATH
TEST_CASE("worker count does not change pipeline bytes") {
    const fs::path dir = work_dir("threads");
    PipelineConfig config = tiny_config("threads_cfg");
    const fs::path config_path = dir / "config.json";
    save_config(config, config_path.string());

    auto run_with_threads = [&](const std::string& threads, const std::string& out) {
        const std::string cmd = "HULLBENCH_THREADS=" + threads + " " +
                                HULLBENCH_CLI_PATH + " run --config " +
                                config_path.string() + " --out " + (dir / out).string() +
                                " > /dev/null 2>&1";
        REQUIRE(std::system(cmd.c_str()) == 0);
    };
    run_with_threads("1", "t1");
    run_with_threads("2", "t2");
    for (const char* name : {"metrics.json", "recon.ply", "hull.ply"}) {
        CAPTURE(name);
        CHECK(slurp(dir / "t1" / name) == slurp(dir / "t2" / name));
    }
}

TEST_CASE("CLI eval-tex computes LPIPS from a feature-pair file") {
    const fs::path dir = work_dir("cli_lpips");
    fs::create_directories(dir / "a");
    fs::create_directories(dir / "b");
    ImageBuffer img(32, 32, 3, 0.4);
    write_ppm(img, (dir / "a" / "view_0_000.ppm").string());
    img.at(3, 4, 0) = 0.9;
    write_ppm(img, (dir / "b" / "view_0_000.ppm").string());

    FeatureStack fx, fy;
    fx.layers.push_back({1, 2, 1, 2.0, {1.0f, 0.0f}});
    fy.layers.push_back({1, 2, 1, 2.0, {0.0f, 0.0f}});
    save_feature_pair((dir / "pair.lpipsfs").string(), fx, fy);

    const std::string out = (dir / "metrics.json").string();
    const std::string cmd = std::string(HULLBENCH_CLI_PATH) + " eval-tex --recon-dir " +
                            (dir / "a").string() + " --gt-dir " + (dir / "b").string() +
                            " --features " + (dir / "pair.lpipsfs").string() + " --out " +
                            out + " > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string metrics = slurp(out);
    CHECK(metrics.find("\"lpips\": 2.0") != std::string::npos);
}

TEST_CASE("CLI: rig writes a camera file; bad flags exit with code 2") {
    const fs::path dir = work_dir("cli_smoke");
    const std::string cameras = (dir / "cameras.json").string();
    const std::string cmd = std::string(HULLBENCH_CLI_PATH) +
                            " rig --theta 45 --count 6 --delta-phi 60 --out " + cameras +
                            " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(cameras));

    const std::string bad = std::string(HULLBENCH_CLI_PATH) +
                            " rig --theta 0 --count 6 --delta-phi 60 --out " + cameras +
                            " > /dev/null 2>&1";
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == 2);
}
#endif
