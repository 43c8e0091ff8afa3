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

// Evaluation metrics: IoU, success plots and their AUC, per-level AUC gain,
// blur robustness profiles, and the normalized robustness curve/score.
//
// Success-plot conventions: 21 thresholds 0.00, 0.05, ..., 1.00 and a strict
// ">" comparison. AUC is the mean of the 21 rates.

#ifndef BLURBENCH_METRICS_HPP_
#define BLURBENCH_METRICS_HPP_

#include <array>
#include <map>
#include <vector>

#include "blurbench/blur.hpp"
#include "blurbench/core.hpp"

namespace blurbench {

inline constexpr int kSuccessThresholdCount = 21;
inline constexpr double kSuccessFrameCutoff = 0.5;

/// Fraction of frames whose IoU strictly exceeds each threshold.
struct SuccessCurve {
    std::array<double, kSuccessThresholdCount> thresholds{};
    std::array<double, kSuccessThresholdCount> rates{};
};

/// AUC per blur level plus the mean / population standard deviation summary.
struct RobustnessProfile {
    std::map<int, double> auc_by_level;
    double mean_auc = 0.0;
    double std_auc = 0.0;
};

/// Normalized robustness curve u (u[0] corresponds to L=1 and equals 1) and
/// its mean, the normalized robustness score.
struct NormalizedRobustness {
    std::array<double, 5> u{};
    double nrs = 0.0;
};

/// Intersection over union of real-valued axis-aligned boxes, in [0, 1].
inline double iou(const BoundingBox& a, const BoundingBox& b) {
    if (!a.valid() || !b.valid()) throw std::invalid_argument("iou: non-positive box area");
    const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
    const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
    const double inter = ix * iy;
    const double uni = a.area() + b.area() - inter;
    return inter / uni;
}

/// Euclidean distance between box centers, pixels.
inline double center_error(const BoundingBox& a, const BoundingBox& b) {
    if (!a.valid() || !b.valid())
        throw std::invalid_argument("center_error: non-positive box area");
    const double dx = a.center_x() - b.center_x();
    const double dy = a.center_y() - b.center_y();
    return std::sqrt(dx * dx + dy * dy);
}

inline SuccessCurve success_curve(const std::vector<double>& ious) {
    if (ious.empty()) throw std::invalid_argument("success_curve: empty IoU list");
    SuccessCurve c;
    for (int k = 0; k < kSuccessThresholdCount; ++k) {
        c.thresholds[k] = k / 20.0;
        size_t n = 0;
        for (double v : ious)
            if (v > c.thresholds[k]) ++n;
        c.rates[k] = static_cast<double>(n) / static_cast<double>(ious.size());
    }
    return c;
}

/// Mean of the sampled success rates (rectangle rule normalized by span).
inline double auc(const SuccessCurve& c) {
    double sum = 0.0;
    for (double r : c.rates) sum += r;
    return sum / kSuccessThresholdCount;
}

inline double auc_of(const std::vector<double>& ious) { return auc(success_curve(ious)); }

/// AUC gain of a blurred subset over the sharp one: G = A_L - A_1.
inline double auc_gain(double auc_level, double auc_sharp) { return auc_level - auc_sharp; }

/// Frames of the sharp subset the tracker handled (IoU strictly above the
/// cutoff); the index set all other levels are scored on.
inline std::vector<size_t> success_frames(const std::vector<double>& ious_on_level1,
                                          double cutoff = kSuccessFrameCutoff) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < ious_on_level1.size(); ++i)
        if (ious_on_level1[i] > cutoff) idx.push_back(i);
    return idx;
}

/// Normalized robustness curve: mean IoU per level over the sharp-success
/// frames, divided by the level-1 value. NRS is the mean of the five entries.
inline NormalizedRobustness nrc(const std::map<int, std::vector<double>>& per_level_ious,
                                const std::vector<size_t>& i_succ) {
    if (i_succ.empty())
        throw std::invalid_argument("nrc: tracker never succeeded on sharp subset");
    NormalizedRobustness out;
    for (size_t li = 0; li < kBlurLevels.size(); ++li) {
        const auto it = per_level_ious.find(kBlurLevels[li]);
        if (it == per_level_ious.end())
            throw std::invalid_argument("nrc: missing level " + std::to_string(kBlurLevels[li]));
        double sum = 0.0;
        for (size_t i : i_succ) {
            if (i >= it->second.size()) throw std::invalid_argument("nrc: index out of range");
            sum += it->second[i];
        }
        out.u[li] = sum / static_cast<double>(i_succ.size());
    }
    const double u1 = out.u[0];
    if (u1 <= 0.0) throw std::invalid_argument("nrc: zero mean IoU on sharp subset");
    for (double& v : out.u) v /= u1;
    double sum = 0.0;
    for (double v : out.u) sum += v;
    out.nrs = sum / static_cast<double>(out.u.size());
    return out;
}

/// Mean and population standard deviation over the five per-level AUCs.
inline RobustnessProfile robustness_profile(const std::map<int, double>& auc_by_level) {
    for (int level : kBlurLevels)
        if (auc_by_level.find(level) == auc_by_level.end())
            throw std::invalid_argument("robustness_profile: missing level " +
                                        std::to_string(level));
    RobustnessProfile p;
    p.auc_by_level = auc_by_level;
    double sum = 0.0;
    for (int level : kBlurLevels) sum += auc_by_level.at(level);
    p.mean_auc = sum / static_cast<double>(kBlurLevels.size());
    double var = 0.0;
    for (int level : kBlurLevels) {
        const double d = auc_by_level.at(level) - p.mean_auc;
        var += d * d;
    }
    p.std_auc = std::sqrt(var / static_cast<double>(kBlurLevels.size()));
    return p;
}

}  // namespace blurbench

#endif  // BLURBENCH_METRICS_HPP_
