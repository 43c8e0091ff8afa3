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

// Tracker contract shared by the baselines and the tracking pipelines.
//
// A tracker T provides:
//   using State = ...;                         // copyable value
//   State init(frame, box) const;
//   std::pair<Frame, RegionMapping> extract_region(state, frame) const;
//   TrackOutput step_region(state, region, mapping) const;
//   TrackOutput step(state, frame) const;      // extract_region + step_region
//   std::string name() const;
//
// step_region operates on a search region the caller may have preprocessed
// (e.g. deblurred); extract_region defines the region geometry the tracker
// expects. Both branches of the selective scheme step from copies of one
// pre-step state, which is why State is a value type.

#ifndef BLURBENCH_TRACKER_HPP_
#define BLURBENCH_TRACKER_HPP_

#include <string>

#include "blurbench/core.hpp"

namespace blurbench {

/// Per-frame tracker output: predicted box plus a confidence in [0, 1]
/// standing in for the observation likelihood.
struct TrackOutput {
    BoundingBox box;
    double confidence = 0.0;
};

namespace detail {

inline void check_init_box(const Frame& frame, const BoundingBox& box, const char* who) {
    if (!box.valid()) throw std::invalid_argument(std::string(who) + ": degenerate box");
    if (box.x < 0.0 || box.y < 0.0 || box.x + box.w > frame.width ||
        box.y + box.h > frame.height)
        throw std::invalid_argument(std::string(who) + ": init box outside frame");
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace detail

}  // namespace blurbench

#endif  // BLURBENCH_TRACKER_HPP_
