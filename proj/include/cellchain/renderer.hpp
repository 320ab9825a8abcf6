#pragma once

#include <array>

#include "cellchain/image.hpp"
#include "cellchain/rng.hpp"

namespace cellchain {

/// Geometry and appearance of the synthetic pick-zone camera.
struct RenderConfig {
    int width = 128;
    int height = 96;
    float ball_r_min = 9.0f;
    float ball_r_max = 12.0f;
    int margin = 4;  // gap kept between balls and to the frame border
    std::array<uint8_t, 3> background{70, 80, 95};
    std::array<uint8_t, 3> ball_color{230, 120, 30};
    int noise_amplitude = 10;
};

struct Ball {
    float cx = 0.0f;
    float cy = 0.0f;
    float r = 0.0f;
};

/// A renderable scene: up to 3 non-overlapping balls fully inside the frame.
struct SceneSpec {
    int width = 128;
    int height = 96;
    std::vector<Ball> balls;
    std::array<uint8_t, 3> background{70, 80, 95};
    std::array<uint8_t, 3> ball_color{230, 120, 30};
    int noise_amplitude = 10;
    uint64_t seed = 1;

    /// Returns an empty string when the spec is renderable, else the reason.
    std::string validate() const;

    /// Deterministically places ball_count balls at seeded random positions.
    static SceneSpec random(int ball_count, uint64_t seed, const RenderConfig& cfg = {});
};

/// Deterministic raster for a spec: anti-aliased discs over the background,
/// plus seeded per-pixel noise. Throws std::invalid_argument on invalid specs.
Frame render_scene(const SceneSpec& spec);

}  // namespace cellchain
