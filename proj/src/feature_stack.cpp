#include <cstdint>
#include <cstring>
#include <fstream>

#include "hullbench/errors.hpp"
#include "hullbench/metrics.hpp"

namespace hullbench {

namespace {

constexpr char kMagic[8] = {'L', 'P', 'I', 'P', 'S', 'F', 'S', '1'};

template <typename T>
void write_raw(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in, const std::string& path) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw ConfigError(path + ": truncated feature file");
    return value;
}

}  // namespace

void save_feature_pair(const std::string& path, const FeatureStack& fx,
                       const FeatureStack& fy) {
    if (fx.layers.size() != fy.layers.size())
        throw ConfigError("feature stacks have different layer counts");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out.write(kMagic, sizeof(kMagic));
    write_raw(out, static_cast<std::uint32_t>(fx.layers.size()));
    for (std::size_t l = 0; l < fx.layers.size(); ++l) {
        const auto& a = fx.layers[l];
        const auto& b = fy.layers[l];
        if (a.height != b.height || a.width != b.width || a.channels != b.channels)
            throw ConfigError("feature layer " + std::to_string(l) + " shape mismatch");
        write_raw(out, static_cast<std::int32_t>(a.height));
        write_raw(out, static_cast<std::int32_t>(a.width));
        write_raw(out, static_cast<std::int32_t>(a.channels));
        write_raw(out, a.weight);
        out.write(reinterpret_cast<const char*>(a.data.data()),
                  static_cast<std::streamsize>(a.data.size() * sizeof(float)));
        out.write(reinterpret_cast<const char*>(b.data.data()),
                  static_cast<std::streamsize>(b.data.size() * sizeof(float)));
    }
    if (!out) throw ConfigError("write failure on '" + path + "'");
}

std::pair<FeatureStack, FeatureStack> load_feature_pair(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open feature file '" + path + "'");
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ConfigError(path + ": not an LPIPSFS1 feature file");

    const auto layer_count = read_raw<std::uint32_t>(in, path);
    if (layer_count > 1024) throw ConfigError(path + ": implausible layer count");

    FeatureStack fx, fy;
    for (std::uint32_t l = 0; l < layer_count; ++l) {
        const auto h = read_raw<std::int32_t>(in, path);
        const auto w = read_raw<std::int32_t>(in, path);
        const auto c = read_raw<std::int32_t>(in, path);
        const auto weight = read_raw<double>(in, path);
        if (h <= 0 || w <= 0 || c <= 0)
            throw ConfigError(path + ": non-positive layer dimension");
        const std::size_t count =
            static_cast<std::size_t>(h) * static_cast<std::size_t>(w) *
            static_cast<std::size_t>(c);

        FeatureStack::Layer layer_x{h, w, c, weight, std::vector<float>(count)};
        in.read(reinterpret_cast<char*>(layer_x.data.data()),
                static_cast<std::streamsize>(count * sizeof(float)));
        FeatureStack::Layer layer_y{h, w, c, weight, std::vector<float>(count)};
        in.read(reinterpret_cast<char*>(layer_y.data.data()),
                static_cast<std::streamsize>(count * sizeof(float)));
        if (!in) throw ConfigError(path + ": truncated feature data");
        fx.layers.push_back(std::move(layer_x));
        fy.layers.push_back(std::move(layer_y));
    }
    return {std::move(fx), std::move(fy)};
}

}  // namespace hullbench
