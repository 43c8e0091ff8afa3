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

// Selective-deblurring tracking scheme and its experimental variants.
//
// Per frame, the search region is deblurred and the tracker is stepped on
// both the raw and deblurred regions from a shared pre-step state. The
// assessor difference between the two regions is the deblurring evidence:
// above the threshold theta the deblurred branch wins outright, otherwise the
// branch with the higher observation confidence does. Only the winning
// branch's tracker state is committed. A two-state Bayesian selector
// (posterior over {raw, deblurred}) is updated alongside and recorded; the
// hard threshold rule decides.
//
// Variants: raw (no deblurring), full (every region deblurred), oracle
// (branch with the smaller center error vs ground truth wins; evaluation
// only).

#ifndef BLURBENCH_SELECT_HPP_
#define BLURBENCH_SELECT_HPP_

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "blurbench/assessor.hpp"
#include "blurbench/deblur.hpp"
#include "blurbench/metrics.hpp"
#include "blurbench/tracker.hpp"

namespace blurbench {

enum class Scheme { kRaw, kFullDeblur, kSelective, kOracle };

inline std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::kRaw: return "raw";
        case Scheme::kFullDeblur: return "full";
        case Scheme::kSelective: return "selective";
        case Scheme::kOracle: return "oracle";
    }
    return "?";
}

inline Scheme scheme_from_string(const std::string& s) {
    if (s == "raw") return Scheme::kRaw;
    if (s == "full") return Scheme::kFullDeblur;
    if (s == "selective") return Scheme::kSelective;
    if (s == "oracle") return Scheme::kOracle;
    throw std::invalid_argument("unknown scheme: " + s);
}

/// Posterior over the selector s in {0 = raw, 1 = deblurred} plus the
/// row-stochastic transition P(s_t | s_{t-1}).
struct SelectorState {
    std::array<double, 2> posterior = {0.5, 0.5};
    std::array<std::array<double, 2>, 2> transition = {{{0.5, 0.5}, {0.5, 0.5}}};
};

struct SchemeConfig {
    double theta = 1.0;  // evidence threshold; calibrated per assessor
    std::array<std::array<double, 2>, 2> transition = {{{0.5, 0.5}, {0.5, 0.5}}};
    double likelihood_floor = 1e-6;
};

/// One Bayes update of the selector: predict through the transition, weight
/// by the evidence likelihoods, renormalize. The deblur likelihood is
/// proportional to the evidence; the raw one to floor + max(0, 2*theta -
/// evidence), a bounded complement.
inline SelectorState selector_posterior(const SelectorState& state, const BlurEvidence& ev,
                                        const SchemeConfig& cfg) {
    SelectorState next = state;
    std::array<double, 2> prior{};
    for (int j = 0; j < 2; ++j)
        prior[j] = state.transition[0][j] * state.posterior[0] +
                   state.transition[1][j] * state.posterior[1];

    const double cap = 2.0 * cfg.theta;
    double like1 = ev.evidence;
    double like0 = std::isfinite(cap) ? cfg.likelihood_floor + std::max(0.0, cap - ev.evidence)
                                      : 1.0;
    if (!std::isfinite(cap)) like1 = 0.0;  // theta = +inf: raw branch certain
    const double like_sum = like0 + like1;
    if (like_sum > 0.0) {
        like0 /= like_sum;
        like1 /= like_sum;
    } else {
        like0 = like1 = 0.5;
    }

    std::array<double, 2> post = {prior[0] * like0, prior[1] * like1};
    const double norm = post[0] + post[1];
    if (norm > 0.0) {
        post[0] /= norm;
        post[1] /= norm;
    } else {
        post = {0.5, 0.5};
    }
    next.posterior = post;
    return next;
}

/// Hard selection rule: heavy blur evidence forces the deblurred branch,
/// otherwise the higher-confidence output wins (ties go to raw).
inline std::pair<TrackOutput, int> fuse(const TrackOutput& raw, const TrackOutput& deblurred,
                                        const BlurEvidence& ev, const SchemeConfig& cfg) {
    if (ev.evidence > cfg.theta) return {deblurred, 1};
    if (deblurred.confidence > raw.confidence) return {deblurred, 1};
    return {raw, 0};
}

/// Per-frame record of a tracking run.
struct FrameResult {
    size_t frame = 0;
    BoundingBox box;
    double confidence = 0.0;
    int selected = 0;            // branch committed: 0 raw, 1 deblurred
    double evidence = 0.0;
    double posterior_deblur = 0.0;
    double iou = 0.0;            // vs ground-truth annotation
    double center_err = 0.0;
    bool ok = true;
    std::string error;
};

namespace detail {

inline FrameResult scored_result(size_t t, const TrackOutput& out, const BoundingBox& truth) {
    FrameResult r;
    r.frame = t;
    r.box = out.box;
    r.confidence = out.confidence;
    r.iou = iou(out.box, truth);
    r.center_err = center_error(out.box, truth);
    return r;
}

inline FrameResult init_result(const BoundingBox& box) {
    FrameResult r;
    r.frame = 0;
    r.box = box;
    r.confidence = 1.0;
    r.iou = 1.0;
    r.center_err = 0.0;
    return r;
}

inline FrameResult failure_result(size_t t, const std::string& message) {
    FrameResult r;
    r.frame = t;
    r.ok = false;
    r.error = message;
    return r;
}

}  // namespace detail

/// Plain tracking on raw frames.
template <class TrackerT>
std::vector<FrameResult> track_video_raw(const TrackerT& tracker, const Sequence& seq) {
    validate_sequence(seq);
    std::vector<FrameResult> results;
    results.reserve(seq.size());
    results.push_back(detail::init_result(seq.annotations[0]));
    try {
        auto state = tracker.init(seq.frames[0], seq.annotations[0]);
        for (size_t t = 1; t < seq.size(); ++t) {
            const TrackOutput out = tracker.step(state, seq.frames[t]);
            results.push_back(detail::scored_result(t, out, seq.annotations[t]));
        }
    } catch (const std::exception& e) {
        results.push_back(detail::failure_result(results.size(), e.what()));
    }
    return results;
}

/// Every search region (or, with full_frame = true, every whole frame) is
/// deblurred before the tracker step. Single branch; theta and the assessor
/// are never consulted.
template <class TrackerT>
std::vector<FrameResult> track_video_full_deblur(const TrackerT& tracker,
                                                 const Deblurrer& deblurrer,
                                                 const Sequence& seq, bool full_frame = false) {
    validate_sequence(seq);
    std::vector<FrameResult> results;
    results.reserve(seq.size());
    results.push_back(detail::init_result(seq.annotations[0]));
    try {
        auto state = tracker.init(seq.frames[0], seq.annotations[0]);
        for (size_t t = 1; t < seq.size(); ++t) {
            TrackOutput out;
            if (full_frame) {
                const Frame deblurred = deblurrer(seq.frames[t]);
                out = tracker.step(state, deblurred);
            } else {
                auto [region, map] = tracker.extract_region(state, seq.frames[t]);
                const Frame deblurred = deblurrer(region);
                out = tracker.step_region(state, deblurred, map);
            }
            results.push_back(detail::scored_result(t, out, seq.annotations[t]));
        }
    } catch (const std::exception& e) {
        results.push_back(detail::failure_result(results.size(), e.what()));
    }
    return results;
}

/// The selective scheme: both branches step from a shared pre-step state and
/// only the fused winner's state is committed.
template <class TrackerT>
std::vector<FrameResult> track_video_selective(const TrackerT& tracker,
                                               const Deblurrer& deblurrer,
                                               const Assessor& assessor, const Sequence& seq,
                                               const SchemeConfig& cfg) {
    validate_sequence(seq);
    if (seq.size() < 2)
        throw std::invalid_argument("track_video_selective: sequence needs at least 2 frames");
    std::vector<FrameResult> results;
    results.reserve(seq.size());
    results.push_back(detail::init_result(seq.annotations[0]));
    SelectorState selector;
    selector.transition = cfg.transition;
    try {
        auto state = tracker.init(seq.frames[0], seq.annotations[0]);
        for (size_t t = 1; t < seq.size(); ++t) {
            auto [region, map] = tracker.extract_region(state, seq.frames[t]);
            const Frame deblurred = deblurrer(region);

            auto raw_state = state;
            auto deb_state = state;
            const TrackOutput raw_out = tracker.step_region(raw_state, region, map);
            const TrackOutput deb_out = tracker.step_region(deb_state, deblurred, map);

            const BlurEvidence ev = blur_evidence(region, deblurred, assessor);
            selector = selector_posterior(selector, ev, cfg);
            const auto [chosen, selected] = fuse(raw_out, deb_out, ev, cfg);
            state = selected ? std::move(deb_state) : std::move(raw_state);

            FrameResult r = detail::scored_result(t, chosen, seq.annotations[t]);
            r.selected = selected;
            r.evidence = ev.evidence;
            r.posterior_deblur = selector.posterior[1];
            results.push_back(r);
        }
    } catch (const std::exception& e) {
        results.push_back(detail::failure_result(results.size(), e.what()));
    }
    return results;
}

/// Evaluation-only upper bound: per frame, the branch with the smaller center
/// error versus ground truth wins (ties go to raw) and its state is
/// committed.
template <class TrackerT>
std::vector<FrameResult> oracle_selective(const TrackerT& tracker, const Deblurrer& deblurrer,
                                          const Sequence& seq) {
    validate_sequence(seq);
    std::vector<FrameResult> results;
    results.reserve(seq.size());
    results.push_back(detail::init_result(seq.annotations[0]));
    try {
        auto state = tracker.init(seq.frames[0], seq.annotations[0]);
        for (size_t t = 1; t < seq.size(); ++t) {
            auto [region, map] = tracker.extract_region(state, seq.frames[t]);
            const Frame deblurred = deblurrer(region);

            auto raw_state = state;
            auto deb_state = state;
            const TrackOutput raw_out = tracker.step_region(raw_state, region, map);
            const TrackOutput deb_out = tracker.step_region(deb_state, deblurred, map);

            const double raw_err = center_error(raw_out.box, seq.annotations[t]);
            const double deb_err = center_error(deb_out.box, seq.annotations[t]);
            const int selected = deb_err < raw_err ? 1 : 0;
            state = selected ? std::move(deb_state) : std::move(raw_state);

            FrameResult r =
                detail::scored_result(t, selected ? deb_out : raw_out, seq.annotations[t]);
            r.selected = selected;
            results.push_back(r);
        }
    } catch (const std::exception& e) {
        results.push_back(detail::failure_result(results.size(), e.what()));
    }
    return results;
}

}  // namespace blurbench

#endif  // BLURBENCH_SELECT_HPP_
