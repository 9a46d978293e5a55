#include "hullbench/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "hullbench/errors.hpp"

namespace hullbench {

std::size_t BinaryMask::count_true() const {
    std::size_t n = 0;
    for (std::uint8_t b : bits) n += b;
    return n;
}

namespace {

std::uint8_t quantize(double v) {
    const long q = std::lround(std::min(1.0, std::max(0.0, v)) * 255.0);
    return static_cast<std::uint8_t>(q);
}

void write_pnm(const std::string& path, const char* magic, int width, int height,
               const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << magic << "\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ConfigError("write failure on '" + path + "'");
}

struct PnmHeader {
    int width = 0, height = 0;
};

PnmHeader read_pnm_header(std::istream& in, const std::string& path,
                          const std::string& expect_magic) {
    std::string magic;
    in >> magic;
    if (magic != expect_magic)
        throw ConfigError(path + ": expected " + expect_magic + " header, got '" + magic + "'");
    auto next_int = [&]() {
        // Skip whitespace and '#' comments between header fields.
        for (;;) {
            const int c = in.peek();
            if (c == '#') {
                std::string comment;
                std::getline(in, comment);
            } else if (std::isspace(c)) {
                in.get();
            } else {
                break;
            }
        }
        int value = 0;
        if (!(in >> value)) throw ConfigError(path + ": truncated header");
        return value;
    };
    PnmHeader h;
    h.width = next_int();
    h.height = next_int();
    const int maxval = next_int();
    if (maxval != 255) throw ConfigError(path + ": only maxval 255 is supported");
    in.get();  // single whitespace before the raster
    return h;
}

std::vector<std::uint8_t> read_raster(std::istream& in, const std::string& path,
                                      std::size_t count) {
    std::vector<std::uint8_t> bytes(count);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count)
        throw ConfigError(path + ": truncated raster data");
    return bytes;
}

}  // namespace

void write_ppm(const ImageBuffer& rgb, const std::string& path) {
    if (rgb.channels != 3) throw ConfigError("write_ppm: image must have 3 channels");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(rgb.data.size());
    for (double v : rgb.data) bytes.push_back(quantize(v));
    write_pnm(path, "P6", rgb.width, rgb.height, bytes);
}

ImageBuffer read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open image '" + path + "'");
    const PnmHeader h = read_pnm_header(in, path, "P6");
    const auto bytes = read_raster(in, path, static_cast<std::size_t>(h.width) * h.height * 3);
    ImageBuffer img(h.width, h.height, 3);
    for (std::size_t i = 0; i < bytes.size(); ++i) img.data[i] = bytes[i] / 255.0;
    return img;
}

void write_pgm(const ImageBuffer& gray, const std::string& path) {
    if (gray.channels != 1) throw ConfigError("write_pgm: image must have 1 channel");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(gray.data.size());
    for (double v : gray.data) bytes.push_back(quantize(v));
    write_pnm(path, "P5", gray.width, gray.height, bytes);
}

ImageBuffer read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open image '" + path + "'");
    const PnmHeader h = read_pnm_header(in, path, "P5");
    const auto bytes = read_raster(in, path, static_cast<std::size_t>(h.width) * h.height);
    ImageBuffer img(h.width, h.height, 1);
    for (std::size_t i = 0; i < bytes.size(); ++i) img.data[i] = bytes[i] / 255.0;
    return img;
}

void write_mask_pgm(const BinaryMask& mask, const std::string& path) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(mask.bits.size());
    for (std::uint8_t b : mask.bits) bytes.push_back(b ? 255 : 0);
    write_pnm(path, "P5", mask.width, mask.height, bytes);
}

BinaryMask read_mask_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open mask '" + path + "'");
    const PnmHeader h = read_pnm_header(in, path, "P5");
    const auto bytes = read_raster(in, path, static_cast<std::size_t>(h.width) * h.height);
    BinaryMask mask(h.width, h.height);
    for (std::size_t i = 0; i < bytes.size(); ++i) mask.bits[i] = bytes[i] >= 128 ? 1 : 0;
    return mask;
}

}  // namespace hullbench
