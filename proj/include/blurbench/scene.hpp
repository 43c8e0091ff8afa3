/* Copyright 2026 The blurbench Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Deterministic high-frame-rate synthetic scenes with exact ground truth.
// A value-noise textured target moves at sub-pixel positions over a lower
// contrast value-noise background; annotations follow the trajectory exactly.

#ifndef BLURBENCH_SCENE_HPP_
#define BLURBENCH_SCENE_HPP_

#include <cstdint>
#include <numbers>
#include <string>

#include "blurbench/core.hpp"

namespace blurbench {

enum class Trajectory { kLinear, kSinusoidal };

struct SceneConfig {
    uint64_t seed = 1;
    int frame_width = 320;
    int frame_height = 240;
    int target_width = 40;
    int target_height = 40;
    Trajectory trajectory = Trajectory::kLinear;
    double speed_x = 1.0;  // px per source frame
    double speed_y = 0.25;
    double amplitude = 20.0;  // sinusoidal vertical amplitude, px
    double period = 120.0;    // sinusoidal period, source frames
    int frame_count = 240;
    double texture_contrast = 0.8;  // in [0, 1]
    double source_fps = 240.0;
};

namespace detail {

inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Lattice sample in [0, 1), deterministic in (seed, ix, iy).
inline double lattice_value(uint64_t seed, int64_t ix, int64_t iy) {
    uint64_t h = mix64(seed ^ 0xA0761D6478BD642FULL);
    h = mix64(h ^ static_cast<uint64_t>(ix) * 0xE7037ED1A0B428DBULL);
    h = mix64(h ^ static_cast<uint64_t>(iy) * 0x8EBC6AF09C88C6E3ULL);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Multi-octave bilinear value noise in [0, 1]; cell size halves per octave
/// and amplitude scales by persistence (> 1 emphasizes fine detail).
inline double value_noise(uint64_t seed, double x, double y, double base_cell, int octaves,
                          double persistence = 0.5) {
    double sum = 0.0, amp = 1.0, norm = 0.0, cell = base_cell;
    for (int o = 0; o < octaves; ++o) {
        const double fx = x / cell, fy = y / cell;
        const auto ix = static_cast<int64_t>(std::floor(fx));
        const auto iy = static_cast<int64_t>(std::floor(fy));
        const double tx = fx - static_cast<double>(ix);
        const double ty = fy - static_cast<double>(iy);
        const uint64_t oseed = seed + 0x51ED270B * static_cast<uint64_t>(o + 1);
        const double v00 = lattice_value(oseed, ix, iy);
        const double v10 = lattice_value(oseed, ix + 1, iy);
        const double v01 = lattice_value(oseed, ix, iy + 1);
        const double v11 = lattice_value(oseed, ix + 1, iy + 1);
        const double v = (v00 * (1 - tx) + v10 * tx) * (1 - ty) +
                         (v01 * (1 - tx) + v11 * tx) * ty;
        sum += amp * v;
        norm += amp;
        amp *= persistence;
        cell = std::max(1.0, cell * 0.5);
    }
    return sum / norm;
}

inline double displacement_x(const SceneConfig& c, int t) { return c.speed_x * t; }

inline double displacement_y(const SceneConfig& c, int t) {
    double d = c.speed_y * t;
    if (c.trajectory == Trajectory::kSinusoidal)
        d += c.amplitude * std::sin(2.0 * std::numbers::pi * t / c.period);
    return d;
}

/// Target texel intensity at texel-grid position (u, v). Fine octaves carry
/// most of the weight so motion blur measurably destroys detail.
inline float target_texel(const SceneConfig& c, double u, double v) {
    const double n = value_noise(c.seed * 2 + 1, u, v, 8.0, 3, 1.7);
    const double val = 127.5 + 127.5 * c.texture_contrast * (2.0 * n - 1.0);
    return static_cast<float>(std::clamp(val, 0.0, 255.0));
}

}  // namespace detail

/// Renders the scene. Deterministic for a given config; annotation t is the
/// exact target box at frame t.
inline Sequence generate_scene(const SceneConfig& cfg) {
    if (cfg.frame_count < 17)
        throw std::invalid_argument("generate_scene: frame_count must be >= 17");
    if (cfg.trajectory == Trajectory::kSinusoidal && cfg.period <= 0.0)
        throw std::invalid_argument("generate_scene: sinusoidal period must be positive");

    // Place the trajectory so its swept envelope is centered; reject configs
    // whose envelope cannot fit.
    double dx_min = 0, dx_max = 0, dy_min = 0, dy_max = 0;
    for (int t = 0; t < cfg.frame_count; ++t) {
        dx_min = std::min(dx_min, detail::displacement_x(cfg, t));
        dx_max = std::max(dx_max, detail::displacement_x(cfg, t));
        dy_min = std::min(dy_min, detail::displacement_y(cfg, t));
        dy_max = std::max(dy_max, detail::displacement_y(cfg, t));
    }
    const double span_x = dx_max - dx_min, span_y = dy_max - dy_min;
    if (span_x > cfg.frame_width - cfg.target_width ||
        span_y > cfg.frame_height - cfg.target_height)
        throw std::invalid_argument("generate_scene: trajectory exits frame bounds");
    const double start_x = (cfg.frame_width - cfg.target_width - span_x) / 2.0 - dx_min;
    const double start_y = (cfg.frame_height - cfg.target_height - span_y) / 2.0 - dy_min;

    // Static background, reused by every frame.
    Frame background(cfg.frame_width, cfg.frame_height, 1);
    const double bg_contrast = 0.4 * cfg.texture_contrast;
    for (int y = 0; y < cfg.frame_height; ++y)
        for (int x = 0; x < cfg.frame_width; ++x) {
            const double n = detail::value_noise(cfg.seed * 2, x, y, 16.0, 3, 1.0);
            const double val = 127.5 + 127.5 * bg_contrast * (2.0 * n - 1.0);
            background.at(x, y) = static_cast<float>(std::clamp(val, 0.0, 255.0));
        }

    Sequence seq;
    seq.fps = cfg.source_fps;
    seq.blur_level = 0;
    seq.frames.reserve(cfg.frame_count);
    seq.annotations.reserve(cfg.frame_count);

    const int tw = cfg.target_width, th = cfg.target_height;
    for (int t = 0; t < cfg.frame_count; ++t) {
        const double px = start_x + detail::displacement_x(cfg, t);
        const double py = start_y + detail::displacement_y(cfg, t);
        Frame frame = background;
        // Composite the target with per-pixel coverage; interior pixels are
        // bilinear samples of the target texture, border pixels blend by the
        // covered cell fraction.
        const int x_lo = static_cast<int>(std::floor(px));
        const int x_hi = static_cast<int>(std::ceil(px + tw));
        const int y_lo = static_cast<int>(std::floor(py));
        const int y_hi = static_cast<int>(std::ceil(py + th));
        for (int iy = std::max(0, y_lo); iy < std::min(cfg.frame_height, y_hi); ++iy) {
            const double cy = std::clamp(std::min<double>(iy + 1, py + th) - std::max<double>(iy, py),
                                         0.0, 1.0);
            if (cy <= 0.0) continue;
            for (int ix = std::max(0, x_lo); ix < std::min(cfg.frame_width, x_hi); ++ix) {
                const double cx = std::clamp(
                    std::min<double>(ix + 1, px + tw) - std::max<double>(ix, px), 0.0, 1.0);
                const double a = cx * cy;
                if (a <= 0.0) continue;
                // sample position in texel-index space (texel centers at +0.5)
                const double u = std::clamp(ix + 0.5 - px - 0.5, 0.0, tw - 1.0);
                const double v = std::clamp(iy + 0.5 - py - 0.5, 0.0, th - 1.0);
                const auto u0 = static_cast<int>(std::floor(u));
                const auto v0 = static_cast<int>(std::floor(v));
                const double fu = u - u0, fv = v - v0;
                const int u1 = std::min(u0 + 1, tw - 1), v1 = std::min(v0 + 1, th - 1);
                const double s =
                    (detail::target_texel(cfg, u0, v0) * (1 - fu) +
                     detail::target_texel(cfg, u1, v0) * fu) * (1 - fv) +
                    (detail::target_texel(cfg, u0, v1) * (1 - fu) +
                     detail::target_texel(cfg, u1, v1) * fu) * fv;
                frame.at(ix, iy) = static_cast<float>(a * s + (1.0 - a) * frame.at(ix, iy));
            }
        }
        seq.frames.push_back(std::move(frame));
        seq.annotations.push_back({px, py, static_cast<double>(tw), static_cast<double>(th)});
    }
    return seq;
}

}  // namespace blurbench

#endif  // BLURBENCH_SCENE_HPP_
