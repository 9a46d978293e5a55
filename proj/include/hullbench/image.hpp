#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hullbench {

/// Row-major raster of reals in [0,1]; 1 (gray) or 3 (RGB) channels.
struct ImageBuffer {
    int width = 0, height = 0, channels = 0;
    std::vector<double> data;

    ImageBuffer() = default;
    ImageBuffer(int w, int h, int c, double fill = 0.0)
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * h * c, fill) {}

    double& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    double at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    bool same_shape(const ImageBuffer& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

/// Row-major boolean raster.
struct BinaryMask {
    int width = 0, height = 0;
    std::vector<std::uint8_t> bits;

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false)
        : width(w), height(h), bits(static_cast<std::size_t>(w) * h, fill ? 1 : 0) {}

    bool get(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
    void set(int x, int y, bool v) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
    std::size_t count_true() const;
    bool any() const { return count_true() > 0; }
};

/// Binary PPM (P6, maxval 255); quantization round(v * 255).
void write_ppm(const ImageBuffer& rgb, const std::string& path);
ImageBuffer read_ppm(const std::string& path);

/// Binary PGM (P5, maxval 255) for single-channel images.
void write_pgm(const ImageBuffer& gray, const std::string& path);
ImageBuffer read_pgm(const std::string& path);

/// Masks as PGM: true -> 255, false -> 0. Reading treats >= 128 as true.
void write_mask_pgm(const BinaryMask& mask, const std::string& path);
BinaryMask read_mask_pgm(const std::string& path);

}  // namespace hullbench
