#pragma once

#include <string>
#include <vector>

#include "hullbench/image.hpp"
#include "hullbench/render.hpp"

namespace hullbench {

struct Query {
    std::string text;
};

/// A view after query-driven masking: RGB zeroed outside the padded mask.
struct MaskedView {
    ImageBuffer rgb_masked;
    BinaryMask padded_mask;
    BinaryMask raw_mask;  // the target's silhouette before padding
    int camera_index = -1;
    bool empty_raw = false;  // the raw object mask had no true pixel
};

/// Case-insensitive substring match against object names. Throws when no
/// object matches or when several do (the message lists the candidates).
std::string resolve_query(const Scene& scene, const Query& query);

/// Chebyshev dilation: output true iff some true input pixel lies within
/// L-inf distance <= padding_px; clipped at the borders.
BinaryMask pad_mask(const BinaryMask& mask, int padding_px);

/// Per view: pads the target's mask and zeroes RGB outside the padded mask.
/// Views with an empty raw mask are flagged, never dropped. Pixels inside
/// the raw mask are passed through untouched.
std::vector<MaskedView> segment_views(const Scene& scene,
                                      const std::vector<RenderOutput>& renders,
                                      const Query& query, int padding_px);

}  // namespace hullbench
