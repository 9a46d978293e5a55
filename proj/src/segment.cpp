#include "hullbench/segment.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "hullbench/errors.hpp"

namespace hullbench {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// 1D boolean max filter of radius r along rows or columns.
void dilate_axis(const BinaryMask& in, BinaryMask& out, int radius, bool rows) {
    const int outer = rows ? in.height : in.width;
    const int inner = rows ? in.width : in.height;
    std::vector<int> prefix(inner + 1);
    for (int o = 0; o < outer; ++o) {
        prefix[0] = 0;
        for (int i = 0; i < inner; ++i) {
            const bool bit = rows ? in.get(i, o) : in.get(o, i);
            prefix[i + 1] = prefix[i] + (bit ? 1 : 0);
        }
        for (int i = 0; i < inner; ++i) {
            const int lo = std::max(0, i - radius);
            const int hi = std::min(inner - 1, i + radius);
            const bool any = prefix[hi + 1] - prefix[lo] > 0;
            if (rows) out.set(i, o, any);
            else out.set(o, i, any);
        }
    }
}

}  // namespace

std::string resolve_query(const Scene& scene, const Query& query) {
    const std::string needle = to_lower(trim(query.text));
    if (needle.empty()) throw ConfigError("query is empty");

    std::vector<std::string> matches;
    for (const auto& object : scene.objects) {
        if (to_lower(object.name).find(needle) != std::string::npos)
            matches.push_back(object.name);
    }
    if (matches.empty())
        throw StageError("segmentation", "object not found for query '" + query.text + "'");
    if (matches.size() > 1) {
        std::string names;
        for (const auto& m : matches) names += (names.empty() ? "" : ", ") + m;
        throw StageError("segmentation",
                         "ambiguous query '" + query.text + "' matches: " + names);
    }
    return matches.front();
}

BinaryMask pad_mask(const BinaryMask& mask, int padding_px) {
    if (padding_px < 0) throw std::invalid_argument("pad_mask: negative padding");
    if (padding_px == 0) return mask;
    // The square structuring element is separable into two 1D passes.
    BinaryMask horizontal(mask.width, mask.height);
    dilate_axis(mask, horizontal, padding_px, /*rows=*/true);
    BinaryMask result(mask.width, mask.height);
    dilate_axis(horizontal, result, padding_px, /*rows=*/false);
    return result;
}

std::vector<MaskedView> segment_views(const Scene& scene,
                                      const std::vector<RenderOutput>& renders,
                                      const Query& query, int padding_px) {
    const std::string target = resolve_query(scene, query);
    std::vector<MaskedView> views;
    views.reserve(renders.size());
    for (std::size_t i = 0; i < renders.size(); ++i) {
        const auto it = renders[i].per_object_mask.find(target);
        if (it == renders[i].per_object_mask.end())
            throw StageError("segmentation", "render " + std::to_string(i) +
                                                 " has no mask for '" + target + "'");
        const BinaryMask& raw = it->second;

        MaskedView view;
        view.camera_index = static_cast<int>(i);
        view.empty_raw = !raw.any();
        view.raw_mask = raw;
        view.padded_mask = pad_mask(raw, padding_px);
        view.rgb_masked = renders[i].rgb;
        for (int y = 0; y < raw.height; ++y) {
            for (int x = 0; x < raw.width; ++x) {
                if (!view.padded_mask.get(x, y)) {
                    for (int c = 0; c < 3; ++c) view.rgb_masked.at(x, y, c) = 0.0;
                }
            }
        }
        views.push_back(std::move(view));
    }
    return views;
}

}  // namespace hullbench
