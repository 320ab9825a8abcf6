#include "cellchain/image.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace cellchain {

Frame Frame::filled(int w, int h, uint8_t r, uint8_t g, uint8_t b) {
    Frame f;
    f.width = w;
    f.height = h;
    f.rgb.resize(size_t(3) * w * h);
    for (size_t i = 0; i < f.rgb.size(); i += 3) {
        f.rgb[i] = r;
        f.rgb[i + 1] = g;
        f.rgb[i + 2] = b;
    }
    return f;
}

size_t Mask::count_set() const {
    size_t n = 0;
    for (uint8_t b : v) n += (b != 0);
    return n;
}

Bytes encode_ppm(const Frame& frame) {
    std::string header = "P6\n" + std::to_string(frame.width) + " " +
                         std::to_string(frame.height) + "\n255\n";
    Bytes out(header.begin(), header.end());
    out.insert(out.end(), frame.rgb.begin(), frame.rgb.end());
    return out;
}

namespace {

// Skips whitespace and '#' comments, then reads a non-negative integer.
int read_ppm_int(const Bytes& b, size_t& pos) {
    while (pos < b.size()) {
        if (std::isspace(b[pos])) {
            ++pos;
        } else if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    if (pos >= b.size() || !std::isdigit(b[pos])) {
        throw std::runtime_error("ppm: expected integer at offset " + std::to_string(pos));
    }
    int value = 0;
    while (pos < b.size() && std::isdigit(b[pos])) {
        value = value * 10 + (b[pos] - '0');
        if (value > (1 << 15)) throw std::runtime_error("ppm: value out of range");
        ++pos;
    }
    return value;
}

}  // namespace

Frame parse_ppm(const Bytes& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '6' && bytes[1] != '3')) {
        throw std::runtime_error("ppm: not a P3/P6 pixmap");
    }
    bool binary = bytes[1] == '6';
    size_t pos = 2;
    Frame f;
    f.width = read_ppm_int(bytes, pos);
    f.height = read_ppm_int(bytes, pos);
    int maxval = read_ppm_int(bytes, pos);
    if (f.width <= 0 || f.height <= 0 || f.width > 8192 || f.height > 8192 ||
        maxval != 255) {
        throw std::runtime_error("ppm: unsupported geometry or depth");
    }
    size_t n = size_t(3) * f.width * f.height;
    if (binary) {
        ++pos;  // single whitespace after maxval
        if (pos > bytes.size() || bytes.size() - pos < n) {
            throw std::runtime_error("ppm: truncated pixel data");
        }
        f.rgb.assign(bytes.begin() + pos, bytes.begin() + pos + n);
    } else {
        f.rgb.resize(n);
        for (size_t i = 0; i < n; ++i) {
            int v = read_ppm_int(bytes, pos);
            if (v < 0 || v > 255) throw std::runtime_error("ppm: sample out of range");
            f.rgb[i] = uint8_t(v);
        }
    }
    return f;
}

void write_ppm(const std::filesystem::path& path, const Frame& frame) {
    Bytes data = encode_ppm(frame);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
}

Frame read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_ppm(data);
}

}  // namespace cellchain
