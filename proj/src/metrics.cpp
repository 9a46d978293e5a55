#include "hullbench/metrics.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "hullbench/parallel.hpp"
#include "hullbench/sampling.hpp"
#include "hullbench/spatial_index.hpp"
#include "hullbench/voxel.hpp"

namespace hullbench {

namespace {

// Mean squared nearest-neighbor distance from `from` into `index`.
// Fixed-chunk partial sums keep the result identical for any worker count.
double directed_mean_sq(const PointCloud& from, const SpatialIndex& index) {
    const std::size_t n = from.points.size();
    const double total = parallel_sum(n, 4096, [&](std::size_t begin, std::size_t end) {
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i)
            sum += index.nearest(from.points[i]).dist2;
        return sum;
    });
    return total / static_cast<double>(n);
}

}  // namespace

double chamfer_distance(const PointCloud& p, const PointCloud& q) {
    if (p.points.empty() || q.points.empty())
        throw std::invalid_argument("chamfer_distance: empty point cloud");
    const SpatialIndex index_q(q);
    const SpatialIndex index_p(p);
    return directed_mean_sq(p, index_q) + directed_mean_sq(q, index_p);
}

double volumetric_iou(const TriangleMesh& a, const TriangleMesh& b, int resolution,
                      const AABB& shared_bounds) {
    const VoxelGrid va = voxelize(a, resolution, shared_bounds);
    const VoxelGrid vb = voxelize(b, resolution, shared_bounds);
    std::size_t intersection = 0, union_count = 0;
    for (std::size_t w = 0; w < va.bits.size(); ++w) {
        intersection += std::popcount(va.bits[w] & vb.bits[w]);
        union_count += std::popcount(va.bits[w] | vb.bits[w]);
    }
    if (union_count == 0)
        throw std::invalid_argument("volumetric_iou: both voxelizations are empty");
    return static_cast<double>(intersection) / static_cast<double>(union_count);
}

double psnr(const ImageBuffer& x, const ImageBuffer& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("psnr: shape mismatch");
    if (x.data.empty()) throw std::invalid_argument("psnr: empty image");
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        const double d = x.data[i] - y.data[i];
        sum_sq += d * d;
    }
    const double mse = sum_sq / static_cast<double>(x.data.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

namespace {

std::vector<double> to_gray(const ImageBuffer& img) {
    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    std::vector<double> gray(n);
    if (img.channels == 1) {
        gray.assign(img.data.begin(), img.data.end());
    } else {
        for (std::size_t i = 0; i < n; ++i)
            gray[i] = 0.299 * img.data[3 * i] + 0.587 * img.data[3 * i + 1] +
                      0.114 * img.data[3 * i + 2];
    }
    return gray;
}

}  // namespace

double ssim(const ImageBuffer& x, const ImageBuffer& y, const SSIMParams& params) {
    if (!x.same_shape(y)) throw std::invalid_argument("ssim: shape mismatch");
    if (x.channels != 1 && x.channels != 3)
        throw std::invalid_argument("ssim: images must have 1 or 3 channels");
    const int w = x.width, h = x.height;
    const int win = params.window;
    if (w < win || h < win)
        throw std::invalid_argument("ssim: image smaller than the window");

    // Normalized Gaussian window.
    std::vector<double> kernel(static_cast<std::size_t>(win) * win);
    const double half = (win - 1) / 2.0;
    double kernel_sum = 0.0;
    for (int j = 0; j < win; ++j) {
        for (int i = 0; i < win; ++i) {
            const double dx = i - half, dy = j - half;
            const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * params.sigma * params.sigma));
            kernel[static_cast<std::size_t>(j) * win + i] = g;
            kernel_sum += g;
        }
    }
    for (double& k : kernel) k /= kernel_sum;

    const std::vector<double> gx = to_gray(x);
    const std::vector<double> gy = to_gray(y);

    const double c1 = params.k1 * params.dynamic_range * params.k1 * params.dynamic_range;
    const double c2 = params.k2 * params.dynamic_range * params.k2 * params.dynamic_range;

    const int out_w = w - win + 1, out_h = h - win + 1;
    const double total = parallel_sum(
        static_cast<std::size_t>(out_h), 8, [&](std::size_t row0, std::size_t row1) {
            double sum = 0.0;
            for (std::size_t oy = row0; oy < row1; ++oy) {
                for (int ox = 0; ox < out_w; ++ox) {
                    double mx = 0, my = 0, mxx = 0, myy = 0, mxy = 0;
                    for (int j = 0; j < win; ++j) {
                        const std::size_t row =
                            (oy + j) * static_cast<std::size_t>(w) + ox;
                        const std::size_t krow = static_cast<std::size_t>(j) * win;
                        for (int i = 0; i < win; ++i) {
                            const double kw = kernel[krow + i];
                            const double a = gx[row + i], b = gy[row + i];
                            mx += kw * a;
                            my += kw * b;
                            mxx += kw * a * a;
                            myy += kw * b * b;
                            mxy += kw * a * b;
                        }
                    }
                    const double var_x = mxx - mx * mx;
                    const double var_y = myy - my * my;
                    const double cov = mxy - mx * my;
                    const double value = ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
                                         ((mx * mx + my * my + c1) * (var_x + var_y + c2));
                    sum += value;
                }
            }
            return sum;
        });
    return total / (static_cast<double>(out_w) * out_h);
}

double lpips_from_features(const FeatureStack& fx, const FeatureStack& fy) {
    if (fx.layers.size() != fy.layers.size())
        throw std::invalid_argument("lpips: layer count mismatch");
    double total = 0.0;
    for (std::size_t l = 0; l < fx.layers.size(); ++l) {
        const auto& a = fx.layers[l];
        const auto& b = fy.layers[l];
        if (a.height != b.height || a.width != b.width || a.channels != b.channels ||
            a.data.size() != b.data.size())
            throw std::invalid_argument("lpips: layer " + std::to_string(l) +
                                        " shape mismatch");
        if (a.weight < 0.0)
            throw std::invalid_argument("lpips: negative layer weight");
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < a.data.size(); ++i) {
            const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
            norm_sq += d * d;
        }
        total += a.weight * norm_sq;
    }
    return total;
}

GeomMetrics evaluate_geometry(const TriangleMesh& reconstruction,
                              const TriangleMesh& ground_truth,
                              const GeomMetricConfig& config) {
    // One shared frame anchored on the ground truth, so scale error stays
    // visible in the metrics.
    const NormalizeResult gt_norm = normalize_to_unit(ground_truth);
    const TriangleMesh recon_norm = apply_transform(reconstruction, gt_norm.transform);

    const PointCloud p = sample_surface(recon_norm, config.samples, config.seed);
    const PointCloud q = sample_surface(gt_norm.mesh, config.samples, config.seed ^ 0x9E3779B97F4A7C15ull);

    GeomMetrics out;
    out.chamfer = chamfer_distance(p, q);
    const AABB bounds = bounding_box(gt_norm.mesh).padded(config.pad_fraction);
    out.iou = volumetric_iou(recon_norm, gt_norm.mesh, config.resolution, bounds);
    out.samples_per_mesh = config.samples;
    out.voxel_resolution = config.resolution;
    return out;
}

TextureMetrics evaluate_texture(const std::vector<ImageBuffer>& recon_renders,
                                const std::vector<ImageBuffer>& gt_renders) {
    if (recon_renders.size() != gt_renders.size())
        throw std::invalid_argument("evaluate_texture: paired lists differ in length");
    if (recon_renders.empty())
        throw std::invalid_argument("evaluate_texture: no view pairs");

    TextureMetrics out;
    out.pairs = static_cast<int>(recon_renders.size());
    double psnr_sum = 0.0;
    int psnr_count = 0;
    double ssim_sum = 0.0;
    for (std::size_t i = 0; i < recon_renders.size(); ++i) {
        const double pair_psnr = psnr(recon_renders[i], gt_renders[i]);
        if (std::isinf(pair_psnr)) {
            ++out.infinite_psnr_pairs;
        } else {
            psnr_sum += pair_psnr;
            ++psnr_count;
        }
        ssim_sum += ssim(recon_renders[i], gt_renders[i]);
    }
    out.psnr_db = psnr_count > 0 ? psnr_sum / psnr_count
                                 : std::numeric_limits<double>::infinity();
    out.ssim = ssim_sum / static_cast<double>(recon_renders.size());
    return out;
}

}  // namespace hullbench
