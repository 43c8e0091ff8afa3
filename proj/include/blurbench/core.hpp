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

#ifndef BLURBENCH_CORE_HPP_
#define BLURBENCH_CORE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blurbench {

/// Rounds half-up everywhere (std::round would send -2.5 to -3).
inline double round_half_up(double v) { return std::floor(v + 0.5); }

inline int round_to_int(double v) { return static_cast<int>(round_half_up(v)); }

/// Single image. Pixels are real-valued intensities in [0, 255], row-major,
/// channel-interleaved. Quantization to 8-bit happens only at image write time.
struct Frame {
    int width = 0;
    int height = 0;
    int channels = 1;  // 1 (gray) or 3 (RGB)
    std::vector<float> pixels;

    Frame() = default;
    Frame(int w, int h, int c, float fill = 0.0f)
        : width(w), height(h), channels(c),
          pixels(static_cast<size_t>(w) * h * c, fill) {
        if (w < 1 || h < 1 || (c != 1 && c != 3))
            throw std::invalid_argument("Frame: bad dimensions or channel count");
    }

    [[nodiscard]] float& at(int x, int y, int c = 0) {
        return pixels[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    [[nodiscard]] float at(int x, int y, int c = 0) const {
        return pixels[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    /// Clamped access; used for edge replication.
    [[nodiscard]] float at_clamped(int x, int y, int c = 0) const {
        x = std::clamp(x, 0, width - 1);
        y = std::clamp(y, 0, height - 1);
        return at(x, y, c);
    }

    [[nodiscard]] bool same_shape(const Frame& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
    [[nodiscard]] size_t pixel_count() const { return pixels.size(); }
};

/// Axis-aligned target annotation, pixel coordinates (0-based, real-valued).
/// (x, y) is the top-left corner; w, h must be positive.
struct BoundingBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    [[nodiscard]] bool valid() const { return w > 0.0 && h > 0.0; }
    [[nodiscard]] double area() const { return w * h; }
    [[nodiscard]] double center_x() const { return x + w / 2.0; }
    [[nodiscard]] double center_y() const { return y + h / 2.0; }

    bool operator==(const BoundingBox& o) const {
        return x == o.x && y == o.y && w == o.w && h == o.h;
    }
};

/// Translation taking region-local coordinates back to frame coordinates.
struct RegionMapping {
    double dx = 0.0;
    double dy = 0.0;

    [[nodiscard]] BoundingBox to_frame(const BoundingBox& local) const {
        return {local.x + dx, local.y + dy, local.w, local.h};
    }
    [[nodiscard]] BoundingBox to_region(const BoundingBox& frame) const {
        return {frame.x - dx, frame.y - dy, frame.w, frame.h};
    }
};

/// Ordered frames with per-frame ground truth.
/// blur_level: averaging window length L in {1,2,4,8,16}, or 0 for an
/// unaveraged source sequence.
struct Sequence {
    std::vector<Frame> frames;
    std::vector<BoundingBox> annotations;
    double fps = 30.0;
    int blur_level = 0;

    [[nodiscard]] size_t size() const { return frames.size(); }
};

inline void validate_sequence(const Sequence& s) {
    if (s.frames.empty() || s.frames.size() != s.annotations.size())
        throw std::invalid_argument("Sequence: frame/annotation count mismatch or empty");
    for (const Frame& f : s.frames)
        if (!f.same_shape(s.frames.front()))
            throw std::invalid_argument("Sequence: frames differ in shape");
}

/// ITU-R BT.601 luma conversion. Gray input is returned unchanged.
inline Frame to_gray(const Frame& f) {
    if (f.channels == 1) return f;
    if (f.channels != 3)
        throw std::invalid_argument("to_gray: unsupported channel count");
    Frame out(f.width, f.height, 1);
    const float* src = f.pixels.data();
    float* dst = out.pixels.data();
    const size_t n = static_cast<size_t>(f.width) * f.height;
    for (size_t i = 0; i < n; ++i) {
        dst[i] = static_cast<float>(0.299 * src[3 * i] + 0.587 * src[3 * i + 1] +
                                    0.114 * src[3 * i + 2]);
    }
    return out;
}

/// Crops a region of out_w x out_h pixels centered at (cx, cy), replicating
/// edge pixels where the region exceeds the frame.
inline std::pair<Frame, RegionMapping> crop_centered(const Frame& f, double cx, double cy,
                                                     int out_w, int out_h) {
    if (out_w < 1 || out_h < 1)
        throw std::invalid_argument("crop_centered: non-positive output size");
    const int x0 = round_to_int(cx - out_w / 2.0);
    const int y0 = round_to_int(cy - out_h / 2.0);
    Frame out(out_w, out_h, f.channels);
    for (int y = 0; y < out_h; ++y) {
        const int sy = std::clamp(y0 + y, 0, f.height - 1);
        for (int x = 0; x < out_w; ++x) {
            const int sx = std::clamp(x0 + x, 0, f.width - 1);
            for (int c = 0; c < f.channels; ++c) out.at(x, y, c) = f.at(sx, sy, c);
        }
    }
    return {std::move(out), RegionMapping{static_cast<double>(x0), static_cast<double>(y0)}};
}

/// Search-region side scale of ~sqrt(5), so the region area is about five
/// times the target area.
inline constexpr double kDefaultRegionScale = 2.24;

/// Crops the search region around a target box: sides scale*(w, h), centered
/// on the box center, edge-replicated out of bounds. The returned mapping
/// converts region-local boxes back to frame coordinates.
inline std::pair<Frame, RegionMapping> crop_region(const Frame& f, const BoundingBox& b,
                                                   double scale = kDefaultRegionScale) {
    if (!b.valid()) throw std::invalid_argument("crop_region: degenerate box");
    if (scale < 1.0) throw std::invalid_argument("crop_region: scale must be >= 1");
    const int out_w = std::max(1, round_to_int(scale * b.w));
    const int out_h = std::max(1, round_to_int(scale * b.h));
    return crop_centered(f, b.center_x(), b.center_y(), out_w, out_h);
}

}  // namespace blurbench

#endif  // BLURBENCH_CORE_HPP_
