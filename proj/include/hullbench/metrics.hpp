#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hullbench/image.hpp"
#include "hullbench/mesh.hpp"

namespace hullbench {

/// Symmetric mean of squared nearest-neighbor distances:
/// mean over P of min squared distance into Q, plus the same with the roles
/// swapped. Exactly symmetric; zero for identical clouds.
double chamfer_distance(const PointCloud& p, const PointCloud& q);

/// |V_A intersect V_B| / |V_A union V_B| with both meshes voxelized on the
/// same grid over shared_bounds. Throws when the union is empty.
double volumetric_iou(const TriangleMesh& a, const TriangleMesh& b, int resolution,
                      const AABB& shared_bounds);

/// 10 log10(MAX^2 / MSE) with MAX = 1; +infinity when MSE is zero.
double psnr(const ImageBuffer& x, const ImageBuffer& y);

struct SSIMParams {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;
};

/// Gaussian-windowed structural similarity, mean-pooled over positions where
/// the full window fits. RGB inputs are converted with 0.299/0.587/0.114.
double ssim(const ImageBuffer& x, const ImageBuffer& y, const SSIMParams& params = {});

struct FeatureStack {
    struct Layer {
        int height = 0, width = 0, channels = 0;
        double weight = 1.0;
        std::vector<float> data;  // row-major H x W x C
    };
    std::vector<Layer> layers;
};

/// Sum over layers of w_l * squared Frobenius norm of the feature
/// difference. No spatial averaging.
double lpips_from_features(const FeatureStack& fx, const FeatureStack& fy);

struct GeomMetricConfig {
    int samples = 100000;
    int resolution = 128;
    double pad_fraction = 0.10;
    std::uint64_t seed = 1;
};

struct GeomMetrics {
    double chamfer = 0.0;
    double iou = 0.0;
    int samples_per_mesh = 0;
    int voxel_resolution = 0;
};

/// Places both meshes in the ground truth's normalized frame (one shared
/// transform), samples `samples` surface points from each, and evaluates
/// chamfer distance plus volumetric IoU over the normalized ground-truth
/// bounds padded by pad_fraction per side.
GeomMetrics evaluate_geometry(const TriangleMesh& reconstruction,
                              const TriangleMesh& ground_truth,
                              const GeomMetricConfig& config = {});

struct TextureMetrics {
    double psnr_db = 0.0;  // +inf when every pair is identical
    double ssim = 0.0;
    std::optional<double> lpips;
    int infinite_psnr_pairs = 0;
    int pairs = 0;
};

/// Per-pair PSNR/SSIM averaged over view pairs; pairs with infinite PSNR are
/// excluded from the PSNR mean and counted.
TextureMetrics evaluate_texture(const std::vector<ImageBuffer>& recon_renders,
                                const std::vector<ImageBuffer>& gt_renders);

/// Feature-pair container: magic "LPIPSFS1", uint32 layer count, then per
/// layer int32 H, W, C, float64 weight, and two row-major float32 blocks
/// (stack x, then stack y). Little-endian.
std::pair<FeatureStack, FeatureStack> load_feature_pair(const std::string& path);
void save_feature_pair(const std::string& path, const FeatureStack& fx,
                       const FeatureStack& fy);

}  // namespace hullbench
