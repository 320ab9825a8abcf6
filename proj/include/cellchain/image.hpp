#pragma once

#include <filesystem>

#include "cellchain/bytes.hpp"

namespace cellchain {

/// 8-bit RGB raster, row-major. Pipeline kernels require width/height >= 32.
struct Frame {
    int width = 0;
    int height = 0;
    Bytes rgb;  // 3 * width * height

    static Frame filled(int w, int h, uint8_t r, uint8_t g, uint8_t b);

    bool valid() const {
        return width >= 32 && height >= 32 &&
               rgb.size() == size_t(3) * width * height;
    }
    size_t idx(int x, int y) const { return (size_t(y) * width + x) * 3; }
    const uint8_t* px(int x, int y) const { return rgb.data() + idx(x, y); }
    uint8_t* px(int x, int y) { return rgb.data() + idx(x, y); }
};

/// Hue in [0, 360), saturation and value in [0, 1].
struct HsvFrame {
    int width = 0;
    int height = 0;
    std::vector<float> hsv;  // 3 * width * height

    size_t idx(int x, int y) const { return (size_t(y) * width + x) * 3; }
};

struct GrayImage {
    int width = 0;
    int height = 0;
    Bytes v;

    uint8_t at(int x, int y) const { return v[size_t(y) * width + x]; }
};

/// Binary raster: 0 or 255 per pixel.
struct Mask {
    int width = 0;
    int height = 0;
    Bytes v;

    bool set(int x, int y) const { return v[size_t(y) * width + x] != 0; }
    size_t count_set() const;
};

using EdgeMap = Mask;

// Portable pixmap encoding. encode_ppm writes binary P6; parse_ppm accepts
// both binary P6 and plain-text P3.
Bytes encode_ppm(const Frame& frame);
Frame parse_ppm(const Bytes& bytes);
void write_ppm(const std::filesystem::path& path, const Frame& frame);
Frame read_ppm(const std::filesystem::path& path);

}  // namespace cellchain
