#include "cellchain/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cellchain {

std::string SceneSpec::validate() const {
    if (width < 32 || height < 32) return "frame smaller than 32x32";
    if (balls.size() > 3) return "more than 3 balls";
    for (size_t i = 0; i < balls.size(); ++i) {
        const Ball& b = balls[i];
        if (b.r <= 0.0f) return "non-positive radius";
        if (b.cx - b.r < 1.0f || b.cy - b.r < 1.0f || b.cx + b.r > float(width) - 1.0f ||
            b.cy + b.r > float(height) - 1.0f) {
            return "ball outside the pick zone";
        }
        for (size_t j = 0; j < i; ++j) {
            float dx = b.cx - balls[j].cx;
            float dy = b.cy - balls[j].cy;
            if (std::hypot(dx, dy) < b.r + balls[j].r + 1.0f) {
                return "overlapping balls";
            }
        }
    }
    return {};
}

SceneSpec SceneSpec::random(int ball_count, uint64_t seed, const RenderConfig& cfg) {
    if (ball_count < 0 || ball_count > 3) {
        throw std::invalid_argument("ball_count must be in [0, 3]");
    }
    SceneSpec spec;
    spec.width = cfg.width;
    spec.height = cfg.height;
    spec.background = cfg.background;
    spec.ball_color = cfg.ball_color;
    spec.noise_amplitude = cfg.noise_amplitude;
    spec.seed = seed;

    Rng rng(mix_seed(seed, 0x5ce7e5ull));
    const float lo_x = cfg.ball_r_max + cfg.margin;
    const float hi_x = float(cfg.width) - cfg.ball_r_max - cfg.margin;
    const float hi_y = float(cfg.height) - cfg.ball_r_max - cfg.margin;
    for (int i = 0; i < ball_count; ++i) {
        for (int attempt = 0;; ++attempt) {
            if (attempt > 10000) {
                throw std::runtime_error("could not place balls; frame too small");
            }
            Ball b;
            b.r = float(rng.uniform(cfg.ball_r_min, cfg.ball_r_max));
            b.cx = float(rng.uniform(lo_x, hi_x));
            b.cy = float(rng.uniform(cfg.ball_r_max + cfg.margin, hi_y));
            bool clear = true;
            for (const Ball& other : spec.balls) {
                if (std::hypot(b.cx - other.cx, b.cy - other.cy) <
                    b.r + other.r + cfg.margin) {
                    clear = false;
                    break;
                }
            }
            if (clear) {
                spec.balls.push_back(b);
                break;
            }
        }
    }
    return spec;
}

Frame render_scene(const SceneSpec& spec) {
    std::string problem = spec.validate();
    if (!problem.empty()) throw std::invalid_argument("invalid scene: " + problem);

    Frame f = Frame::filled(spec.width, spec.height, spec.background[0],
                            spec.background[1], spec.background[2]);

    for (const Ball& b : spec.balls) {
        int x0 = std::max(0, int(std::floor(b.cx - b.r - 1.0f)));
        int x1 = std::min(spec.width - 1, int(std::ceil(b.cx + b.r + 1.0f)));
        int y0 = std::max(0, int(std::floor(b.cy - b.r - 1.0f)));
        int y1 = std::min(spec.height - 1, int(std::ceil(b.cy + b.r + 1.0f)));
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                float d = std::hypot(float(x) + 0.5f - b.cx, float(y) + 0.5f - b.cy);
                // 1-px linear edge ramp
                float alpha = std::clamp(b.r - d + 0.5f, 0.0f, 1.0f);
                if (alpha <= 0.0f) continue;
                uint8_t* px = f.px(x, y);
                for (int c = 0; c < 3; ++c) {
                    float v = alpha * spec.ball_color[c] + (1.0f - alpha) * px[c];
                    px[c] = uint8_t(std::lround(v));
                }
            }
        }
    }

    if (spec.noise_amplitude > 0) {
        Rng rng(mix_seed(spec.seed, 0x9015eull));
        for (auto& byte : f.rgb) {
            int64_t n = rng.uniform_int(-spec.noise_amplitude, spec.noise_amplitude);
            byte = uint8_t(std::clamp<int64_t>(int64_t(byte) + n, 0, 255));
        }
    }
    return f;
}

}  // namespace cellchain
