#include "cellchain/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace cellchain {

HsvFrame rgb_to_hsv(const Frame& frame) {
    if (!frame.valid()) throw std::invalid_argument("invalid frame");
    HsvFrame out;
    out.width = frame.width;
    out.height = frame.height;
    out.hsv.resize(frame.rgb.size());
    for (size_t i = 0; i < frame.rgb.size(); i += 3) {
        float r = frame.rgb[i] / 255.0f;
        float g = frame.rgb[i + 1] / 255.0f;
        float b = frame.rgb[i + 2] / 255.0f;
        float hi = std::max({r, g, b});
        float lo = std::min({r, g, b});
        float delta = hi - lo;
        float h = 0.0f;
        if (delta > 0.0f) {
            if (hi == r) {
                h = 60.0f * ((g - b) / delta);
            } else if (hi == g) {
                h = 60.0f * ((b - r) / delta + 2.0f);
            } else {
                h = 60.0f * ((r - g) / delta + 4.0f);
            }
            if (h < 0.0f) h += 360.0f;
        }
        out.hsv[i] = h;
        out.hsv[i + 1] = hi > 0.0f ? delta / hi : 0.0f;
        out.hsv[i + 2] = hi;
    }
    return out;
}

Frame hsv_to_rgb(const HsvFrame& hsv) {
    Frame out;
    out.width = hsv.width;
    out.height = hsv.height;
    out.rgb.resize(hsv.hsv.size());
    for (size_t i = 0; i < hsv.hsv.size(); i += 3) {
        float h = hsv.hsv[i];
        float s = hsv.hsv[i + 1];
        float v = hsv.hsv[i + 2];
        float c = v * s;
        float hp = h / 60.0f;
        float x = c * (1.0f - std::fabs(std::fmod(hp, 2.0f) - 1.0f));
        float r = 0, g = 0, b = 0;
        if (hp < 1) {
            r = c; g = x;
        } else if (hp < 2) {
            r = x; g = c;
        } else if (hp < 3) {
            g = c; b = x;
        } else if (hp < 4) {
            g = x; b = c;
        } else if (hp < 5) {
            r = x; b = c;
        } else {
            r = c; b = x;
        }
        float m = v - c;
        out.rgb[i] = uint8_t(std::lround((r + m) * 255.0f));
        out.rgb[i + 1] = uint8_t(std::lround((g + m) * 255.0f));
        out.rgb[i + 2] = uint8_t(std::lround((b + m) * 255.0f));
    }
    return out;
}

Mask orange_mask(const HsvFrame& hsv, const PipelineConfig& cfg) {
    Mask m;
    m.width = hsv.width;
    m.height = hsv.height;
    m.v.assign(size_t(hsv.width) * hsv.height, 0);
    for (size_t p = 0, i = 0; p < m.v.size(); ++p, i += 3) {
        float h = hsv.hsv[i];
        float s = hsv.hsv[i + 1];
        float v = hsv.hsv[i + 2];
        if (h >= cfg.hue_lo && h <= cfg.hue_hi && s >= cfg.sat_min && v >= cfg.val_min) {
            m.v[p] = 255;
        }
    }
    return m;
}

namespace {

std::array<float, 5> gaussian_kernel5(float sigma) {
    std::array<float, 5> k;
    float sum = 0.0f;
    for (int i = 0; i < 5; ++i) {
        float d = float(i - 2);
        k[i] = std::exp(-d * d / (2.0f * sigma * sigma));
        sum += k[i];
    }
    for (auto& v : k) v /= sum;
    return k;
}

inline int clamp_coord(int v, int hi) { return v < 0 ? 0 : (v >= hi ? hi - 1 : v); }

}  // namespace

Frame gaussian_blur5(const Frame& frame, float sigma) {
    auto k = gaussian_kernel5(sigma);
    const int w = frame.width, h = frame.height;
    // horizontal then vertical pass, border clamped
    std::vector<float> tmp(frame.rgb.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) {
                float acc = 0.0f;
                for (int t = -2; t <= 2; ++t) {
                    acc += k[t + 2] * frame.rgb[frame.idx(clamp_coord(x + t, w), y) + c];
                }
                tmp[frame.idx(x, y) + c] = acc;
            }
        }
    }
    Frame out;
    out.width = w;
    out.height = h;
    out.rgb.resize(frame.rgb.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) {
                float acc = 0.0f;
                for (int t = -2; t <= 2; ++t) {
                    acc += k[t + 2] * tmp[frame.idx(x, clamp_coord(y + t, h)) + c];
                }
                out.rgb[out.idx(x, y) + c] = uint8_t(std::lround(std::clamp(acc, 0.0f, 255.0f)));
            }
        }
    }
    return out;
}

GrayImage masked_gray(const Frame& frame, const Mask& mask, const PipelineConfig& cfg) {
    if (frame.width != mask.width || frame.height != mask.height) {
        throw std::invalid_argument("mask dimensions do not match frame");
    }
    Frame blurred = frame;
    for (int pass = 0; pass < cfg.blur_passes; ++pass) {
        blurred = gaussian_blur5(blurred, cfg.blur_sigma);
    }
    GrayImage gray;
    gray.width = frame.width;
    gray.height = frame.height;
    gray.v.resize(size_t(frame.width) * frame.height);
    for (size_t p = 0, i = 0; p < gray.v.size(); ++p, i += 3) {
        uint8_t m = mask.v[p];
        uint8_t r = blurred.rgb[i] & m;
        uint8_t g = blurred.rgb[i + 1] & m;
        uint8_t b = blurred.rgb[i + 2] & m;
        gray.v[p] = uint8_t(std::lround(0.299 * r + 0.587 * g + 0.114 * b));
    }
    return gray;
}

EdgeMap canny(const GrayImage& gray, float low, float high) {
    if (!(low < high)) throw std::invalid_argument("canny requires low < high");
    const int w = gray.width, h = gray.height;
    std::vector<float> mag(size_t(w) * h, 0.0f);
    std::vector<float> gx(size_t(w) * h, 0.0f), gy(size_t(w) * h, 0.0f);

    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            auto g = [&](int dx, int dy) { return float(gray.at(x + dx, y + dy)); };
            float sx = (g(1, -1) + 2 * g(1, 0) + g(1, 1)) - (g(-1, -1) + 2 * g(-1, 0) + g(-1, 1));
            float sy = (g(-1, 1) + 2 * g(0, 1) + g(1, 1)) - (g(-1, -1) + 2 * g(0, -1) + g(1, -1));
            size_t p = size_t(y) * w + x;
            gx[p] = sx;
            gy[p] = sy;
            // clamp to the 0-255 scale the thresholds are expressed in
            mag[p] = std::min(255.0f, std::hypot(sx, sy));
        }
    }

    // non-maximum suppression along the quantized gradient direction;
    // asymmetric comparison keeps exactly one pixel on flat-topped ridges
    std::vector<uint8_t> strength(size_t(w) * h, 0);  // 0 none, 1 weak, 2 strong
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 1; x < w - 1; ++x) {
            size_t p = size_t(y) * w + x;
            float m = mag[p];
            if (m <= low) continue;
            float ax = std::fabs(gx[p]), ay = std::fabs(gy[p]);
            float m1, m2;
            if (ay <= 0.4142f * ax) {  // ~0 deg: compare left/right
                m1 = mag[p - 1];
                m2 = mag[p + 1];
            } else if (ax <= 0.4142f * ay) {  // ~90 deg: compare up/down
                m1 = mag[p - w];
                m2 = mag[p + w];
            } else if ((gx[p] > 0) == (gy[p] > 0)) {  // ~45 deg diagonal
                m1 = mag[p - w - 1];
                m2 = mag[p + w + 1];
            } else {  // ~135 deg diagonal
                m1 = mag[p - w + 1];
                m2 = mag[p + w - 1];
            }
            if (m > m1 && m >= m2) {
                strength[p] = m > high ? 2 : 1;
            }
        }
    }

    // hysteresis: weak pixels survive only when 8-connected to a strong one
    EdgeMap edges;
    edges.width = w;
    edges.height = h;
    edges.v.assign(size_t(w) * h, 0);
    std::deque<size_t> frontier;
    for (size_t p = 0; p < strength.size(); ++p) {
        if (strength[p] == 2) {
            edges.v[p] = 255;
            frontier.push_back(p);
        }
    }
    while (!frontier.empty()) {
        size_t p = frontier.front();
        frontier.pop_front();
        int x = int(p % w), y = int(p / w);
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                size_t q = size_t(ny) * w + nx;
                if (strength[q] == 1 && edges.v[q] == 0) {
                    edges.v[q] = 255;
                    frontier.push_back(q);
                }
            }
        }
    }
    return edges;
}

namespace {

// Midpoint-circle offsets for one radius: the exact set of integer cells at
// distance ~r, so an edge pixel votes each candidate center once.
std::vector<std::pair<int, int>> circle_offsets(int r) {
    std::vector<std::pair<int, int>> pts;
    int x = r, y = 0, err = 1 - r;
    while (x >= y) {
        const int octants[8][2] = {{x, y},  {y, x},  {-y, x},  {-x, y},
                                   {-x, -y}, {-y, -x}, {y, -x},  {x, -y}};
        for (const auto& o : octants) pts.emplace_back(o[0], o[1]);
        ++y;
        if (err < 0) {
            err += 2 * y + 1;
        } else {
            --x;
            err += 2 * (y - x) + 1;
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

std::vector<CircleDetection> hough_circles(const EdgeMap& edges, int r_min, int r_max,
                                           int vote_threshold, int min_center_dist) {
    if (!(r_min < r_max)) throw std::invalid_argument("hough requires r_min < r_max");
    const int w = edges.width, h = edges.height;
    const int n_r = r_max - r_min + 1;

    std::vector<std::vector<std::pair<int, int>>> offsets(n_r);
    for (int ri = 0; ri < n_r; ++ri) offsets[ri] = circle_offsets(r_min + ri);

    // accumulator: one (w*h) slice per radius, 1 px resolution in all three axes
    std::vector<std::vector<int>> acc(n_r, std::vector<int>(size_t(w) * h, 0));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!edges.set(x, y)) continue;
            for (int ri = 0; ri < n_r; ++ri) {
                for (const auto& [dx, dy] : offsets[ri]) {
                    int cx = x + dx, cy = y + dy;
                    if (cx < 0 || cy < 0 || cx >= w || cy >= h) continue;
                    ++acc[ri][size_t(cy) * w + cx];
                }
            }
        }
    }

    // local maxima in the radius slice, above threshold
    std::vector<CircleDetection> candidates;
    for (int ri = 0; ri < n_r; ++ri) {
        const auto& slice = acc[ri];
        for (int y = 1; y < h - 1; ++y) {
            for (int x = 1; x < w - 1; ++x) {
                int v = slice[size_t(y) * w + x];
                if (v < vote_threshold) continue;
                size_t p = size_t(y) * w + x;
                if (v > slice[p - 1] && v >= slice[p + 1] && v > slice[p - w] &&
                    v >= slice[p + w]) {
                    candidates.push_back({x, y, r_min + ri, v});
                }
            }
        }
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const CircleDetection& a, const CircleDetection& b) {
                  if (a.votes != b.votes) return a.votes > b.votes;
                  if (a.r != b.r) return a.r > b.r;
                  if (a.cy != b.cy) return a.cy < b.cy;
                  return a.cx < b.cx;
              });

    std::vector<CircleDetection> result;
    const int min_d2 = min_center_dist * min_center_dist;
    for (const auto& c : candidates) {
        bool suppressed = false;
        for (const auto& kept : result) {
            int dx = c.cx - kept.cx, dy = c.cy - kept.cy;
            if (dx * dx + dy * dy < min_d2) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) result.push_back(c);
    }
    return result;
}

std::vector<CircleDetection> detect_circles(const Frame& frame, const PipelineConfig& cfg) {
    HsvFrame hsv = rgb_to_hsv(frame);
    Mask mask = orange_mask(hsv, cfg);
    GrayImage gray = masked_gray(frame, mask, cfg);
    EdgeMap edges = canny(gray, cfg.canny_low, cfg.canny_high);
    return hough_circles(edges, cfg.r_min, cfg.r_max, cfg.vote_threshold,
                         cfg.min_center_dist);
}

int count_balls(const Frame& frame, const PipelineConfig& cfg) {
    int n = int(detect_circles(frame, cfg).size());
    return std::min(n, 3);
}

std::string PipelineConfig::to_key_values() const {
    std::ostringstream out;
    out << "hue_lo=" << hue_lo << "\n"
        << "hue_hi=" << hue_hi << "\n"
        << "sat_min=" << sat_min << "\n"
        << "val_min=" << val_min << "\n"
        << "blur_sigma=" << blur_sigma << "\n"
        << "blur_passes=" << blur_passes << "\n"
        << "canny_low=" << canny_low << "\n"
        << "canny_high=" << canny_high << "\n"
        << "r_min=" << r_min << "\n"
        << "r_max=" << r_max << "\n"
        << "vote_threshold=" << vote_threshold << "\n"
        << "min_center_dist=" << min_center_dist << "\n";
    return out.str();
}

PipelineConfig PipelineConfig::from_key_values(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "hue_lo") cfg.hue_lo = std::stof(value);
        else if (key == "hue_hi") cfg.hue_hi = std::stof(value);
        else if (key == "sat_min") cfg.sat_min = std::stof(value);
        else if (key == "val_min") cfg.val_min = std::stof(value);
        else if (key == "blur_sigma") cfg.blur_sigma = std::stof(value);
        else if (key == "blur_passes") cfg.blur_passes = std::stoi(value);
        else if (key == "canny_low") cfg.canny_low = std::stof(value);
        else if (key == "canny_high") cfg.canny_high = std::stof(value);
        else if (key == "r_min") cfg.r_min = std::stoi(value);
        else if (key == "r_max") cfg.r_max = std::stoi(value);
        else if (key == "vote_threshold") cfg.vote_threshold = std::stoi(value);
        else if (key == "min_center_dist") cfg.min_center_dist = std::stoi(value);
        else throw std::invalid_argument("unknown pipeline key: " + key);
    }
    return cfg;
}

}  // namespace cellchain
