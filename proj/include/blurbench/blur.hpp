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

// Multi-level motion-blur synthesis from a high-frame-rate source sequence.
//
// A blurred sequence at level L replaces every frame with the arithmetic mean
// of L successive source frames; its ground truth is the average annotation
// of the middle frame(s) of each window. The blurred sequence is then
// subsampled (default every 8th frame) and its first frame is swapped for the
// sharp source first frame so trackers initialize on an unblurred template.

#ifndef BLURBENCH_BLUR_HPP_
#define BLURBENCH_BLUR_HPP_

#include <array>
#include <map>
#include <string>
#include <vector>

#include "blurbench/core.hpp"

namespace blurbench {

inline constexpr std::array<int, 5> kBlurLevels = {1, 2, 4, 8, 16};
inline constexpr int kDefaultSubsampleStride = 8;

/// One scene at all blur levels. Level sequences share a common length and
/// correspond frame-by-frame: frame t>=1 of every level derives from the
/// source window starting at index t*stride.
struct BenchmarkSet {
    std::string scene_id;
    std::map<int, Sequence> levels;
};

/// Per-pixel arithmetic mean of a window of frames.
inline Frame average_frames(const std::vector<Frame>& window) {
    if (window.empty()) throw std::invalid_argument("average_frames: empty window");
    const Frame& first = window.front();
    for (const Frame& f : window)
        if (!f.same_shape(first))
            throw std::invalid_argument("average_frames: dimension mismatch");
    if (window.size() == 1) return first;
    Frame out(first.width, first.height, first.channels);
    std::vector<double> acc(first.pixel_count(), 0.0);
    for (const Frame& f : window)
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += f.pixels[i];
    const double inv = 1.0 / static_cast<double>(window.size());
    for (size_t i = 0; i < acc.size(); ++i) out.pixels[i] = static_cast<float>(acc[i] * inv);
    return out;
}

/// Ground truth of an averaged frame: the annotation of the middle window
/// frame (odd L), or the component-wise mean of the two middle ones (even L).
inline BoundingBox blur_ground_truth(const std::vector<BoundingBox>& annots) {
    if (annots.empty()) throw std::invalid_argument("blur_ground_truth: empty annotation list");
    const size_t n = annots.size();
    if (n % 2 == 1) return annots[n / 2];
    const BoundingBox& a = annots[n / 2 - 1];
    const BoundingBox& b = annots[n / 2];
    return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0, (a.w + b.w) / 2.0, (a.h + b.h) / 2.0};
}

/// Sliding-window blur: output frame t averages source frames [t, t+L-1].
/// Output length is |src| - L + 1; the frame rate is unchanged.
///
/// A running sum replaces per-window averaging. Sums of float pixels are
/// exactly representable in double (24 + log2(T) < 53 bits), so the sliding
/// update is bit-identical to average_frames over each window.
inline Sequence synthesize_level(const Sequence& src, int level) {
    if (level < 1) throw std::invalid_argument("synthesize_level: level must be >= 1");
    const size_t n = src.size();
    if (static_cast<size_t>(level) > n)
        throw std::invalid_argument("synthesize_level: level exceeds sequence length");
    for (const Frame& f : src.frames)
        if (!f.same_shape(src.frames.front()))
            throw std::invalid_argument("synthesize_level: dimension mismatch");
    Sequence out;
    out.fps = src.fps;
    out.blur_level = level;
    const size_t out_len = n - level + 1;
    out.frames.reserve(out_len);
    out.annotations.reserve(out_len);
    if (level == 1) {
        out.frames = src.frames;
        out.annotations = src.annotations;
        return out;
    }
    const Frame& proto = src.frames.front();
    std::vector<double> acc(proto.pixel_count(), 0.0);
    for (int i = 0; i < level; ++i)
        for (size_t p = 0; p < acc.size(); ++p) acc[p] += src.frames[i].pixels[p];
    const double inv = 1.0 / static_cast<double>(level);
    for (size_t t = 0; t < out_len; ++t) {
        Frame avg(proto.width, proto.height, proto.channels);
        for (size_t p = 0; p < acc.size(); ++p) avg.pixels[p] = static_cast<float>(acc[p] * inv);
        out.frames.push_back(std::move(avg));
        out.annotations.push_back(blur_ground_truth(
            {src.annotations.begin() + t, src.annotations.begin() + t + level}));
        if (t + 1 < out_len)
            for (size_t p = 0; p < acc.size(); ++p)
                acc[p] += static_cast<double>(src.frames[t + level].pixels[p]) -
                          src.frames[t].pixels[p];
    }
    return out;
}

/// Keeps frames at indices 0, stride, 2*stride, ... and swaps index 0 for the
/// provided sharp frame/box. The frame rate is divided by the stride.
inline Sequence subsample(const Sequence& seq, int stride, const Frame& sharp_first,
                          const BoundingBox& sharp_first_box) {
    if (stride < 1) throw std::invalid_argument("subsample: stride must be >= 1");
    if (seq.frames.empty()) throw std::invalid_argument("subsample: empty sequence");
    Sequence out;
    out.fps = seq.fps / stride;
    out.blur_level = seq.blur_level;
    for (size_t t = 0; t < seq.size(); t += stride) {
        out.frames.push_back(seq.frames[t]);
        out.annotations.push_back(seq.annotations[t]);
    }
    out.frames[0] = sharp_first;
    out.annotations[0] = sharp_first_box;
    return out;
}

/// Builds all five levels from a source sequence and truncates them to the
/// minimum common length so frame indices correspond across levels.
inline BenchmarkSet build_benchmark(const Sequence& src, const std::string& scene_id = "scene",
                                    int stride = kDefaultSubsampleStride) {
    if (src.size() < static_cast<size_t>(kBlurLevels.back()))
        throw std::invalid_argument("build_benchmark: source shorter than largest blur level");
    BenchmarkSet set;
    set.scene_id = scene_id;
    size_t common = SIZE_MAX;
    for (int level : kBlurLevels) {
        Sequence s = subsample(synthesize_level(src, level), stride, src.frames.front(),
                               src.annotations.front());
        common = std::min(common, s.size());
        set.levels.emplace(level, std::move(s));
    }
    for (auto& [level, s] : set.levels) {
        s.frames.resize(common);
        s.annotations.resize(common);
    }
    return set;
}

}  // namespace blurbench

#endif  // BLURBENCH_BLUR_HPP_
