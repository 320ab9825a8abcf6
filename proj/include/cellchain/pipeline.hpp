#pragma once

#include <vector>

#include "cellchain/image.hpp"

namespace cellchain {

/// Every threshold used by the detection pipeline. Defaults were tuned once
/// against the synthetic renderer; nothing is hard-coded in the steps.
struct PipelineConfig {
    // orange band in HSV
    float hue_lo = 10.0f;
    float hue_hi = 35.0f;
    float sat_min = 0.45f;
    float val_min = 0.35f;
    // 5x5 Gaussian, applied blur_passes times
    float blur_sigma = 1.4f;
    int blur_passes = 2;
    // gradient-magnitude thresholds on the 0-255 scale
    float canny_low = 50.0f;
    float canny_high = 150.0f;
    // circle search
    int r_min = 7;
    int r_max = 15;
    int vote_threshold = 24;
    int min_center_dist = 14;

    std::string to_key_values() const;
    static PipelineConfig from_key_values(const std::string& text);
};

struct CircleDetection {
    int cx = 0;
    int cy = 0;
    int r = 0;
    int votes = 0;
};

HsvFrame rgb_to_hsv(const Frame& frame);
Frame hsv_to_rgb(const HsvFrame& hsv);

/// Pixel is set iff hue in [hue_lo, hue_hi], sat >= sat_min, val >= val_min.
Mask orange_mask(const HsvFrame& hsv, const PipelineConfig& cfg = {});

Frame gaussian_blur5(const Frame& frame, float sigma);

/// Blurs the original frame (cfg.blur_passes passes), combines it bit-wise
/// with the mask, then converts to luminance grayscale.
/// Throws std::invalid_argument on dimension mismatch.
GrayImage masked_gray(const Frame& frame, const Mask& mask, const PipelineConfig& cfg = {});

/// Sobel gradients, non-maximum suppression, double-threshold hysteresis.
/// Requires low < high.
EdgeMap canny(const GrayImage& gray, float low, float high);

/// 3-parameter accumulator (cx, cy, r) voted by edge pixels. Local maxima
/// above vote_threshold, suppressed within min_center_dist, sorted by votes
/// descending (deterministic tie-break). Requires r_min < r_max.
std::vector<CircleDetection> hough_circles(const EdgeMap& edges, int r_min, int r_max,
                                           int vote_threshold, int min_center_dist);

std::vector<CircleDetection> detect_circles(const Frame& frame,
                                            const PipelineConfig& cfg = {});

/// Full pipeline; returns the detection count capped at 3.
int count_balls(const Frame& frame, const PipelineConfig& cfg = {});

}  // namespace cellchain
