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

// Zero-normalized cross-correlation baseline: the grayscale init template is
// matched against every placement inside the search region. Translation only;
// the template is never updated.

#ifndef BLURBENCH_NCC_HPP_
#define BLURBENCH_NCC_HPP_

#include <string>
#include <utility>
#include <vector>

#include "blurbench/tracker.hpp"

namespace blurbench {

struct NccParams {
    double region_scale = kDefaultRegionScale;
};

class NccTracker {
public:
    struct State {
        bool initialized = false;
        BoundingBox box;
        Frame tmpl;  // grayscale, zero-mean stored as-is (mean removed at match time)
        int frame_width = 0;
        int frame_height = 0;
    };

    explicit NccTracker(NccParams params = {}) : params_(params) {}

    [[nodiscard]] std::string name() const { return "ncc"; }

    [[nodiscard]] State init(const Frame& frame, const BoundingBox& box) const {
        detail::check_init_box(frame, box, "NccTracker::init");
        State s;
        s.initialized = true;
        s.box = box;
        s.tmpl = crop_region(to_gray(frame), box, 1.0).first;
        s.frame_width = frame.width;
        s.frame_height = frame.height;
        return s;
    }

    [[nodiscard]] std::pair<Frame, RegionMapping> extract_region(const State& s,
                                                                 const Frame& frame) const {
        if (!s.initialized) throw std::invalid_argument("NccTracker: uninitialized state");
        if (frame.width != s.frame_width || frame.height != s.frame_height)
            throw std::invalid_argument("NccTracker: frame dimension mismatch");
        return crop_region(frame, s.box, params_.region_scale);
    }

    TrackOutput step_region(State& s, const Frame& region, const RegionMapping& map) const {
        if (!s.initialized) throw std::invalid_argument("NccTracker: uninitialized state");
        const Frame g = to_gray(region);
        const int tw = s.tmpl.width, th = s.tmpl.height;
        if (g.width < tw || g.height < th)
            throw std::invalid_argument("NccTracker: region smaller than template");

        // template statistics
        const size_t tn = s.tmpl.pixel_count();
        double t_sum = 0.0;
        for (float v : s.tmpl.pixels) t_sum += v;
        const double t_mean = t_sum / static_cast<double>(tn);
        double t_ss = 0.0;
        std::vector<double> t_centered(tn);
        for (size_t i = 0; i < tn; ++i) {
            t_centered[i] = s.tmpl.pixels[i] - t_mean;
            t_ss += t_centered[i] * t_centered[i];
        }
        const double t_norm = std::sqrt(t_ss);

        // integral images for window mean / energy
        const int rw = g.width, rh = g.height;
        std::vector<double> isum(static_cast<size_t>(rw + 1) * (rh + 1), 0.0);
        std::vector<double> isum2(isum.size(), 0.0);
        for (int y = 0; y < rh; ++y)
            for (int x = 0; x < rw; ++x) {
                const double v = g.at(x, y);
                const size_t i = static_cast<size_t>(y + 1) * (rw + 1) + (x + 1);
                isum[i] = v + isum[i - 1] + isum[i - rw - 1] - isum[i - rw - 2];
                isum2[i] = v * v + isum2[i - 1] + isum2[i - rw - 1] - isum2[i - rw - 2];
            }
        const auto window_sums = [&](int x0, int y0, double& sum, double& sum2) {
            const size_t a = static_cast<size_t>(y0) * (rw + 1) + x0;
            const size_t b = static_cast<size_t>(y0 + th) * (rw + 1) + x0;
            sum = isum[b + tw] - isum[b] - isum[a + tw] + isum[a];
            sum2 = isum2[b + tw] - isum2[b] - isum2[a + tw] + isum2[a];
        };

        constexpr double kVarEps = 1e-9;
        double best = 0.0;
        int best_x = -1, best_y = -1;
        if (t_norm > kVarEps) {
            for (int y0 = 0; y0 + th <= rh; ++y0) {
                for (int x0 = 0; x0 + tw <= rw; ++x0) {
                    double w_sum, w_sum2;
                    window_sums(x0, y0, w_sum, w_sum2);
                    const double w_ss =
                        w_sum2 - w_sum * w_sum / static_cast<double>(tn);
                    if (w_ss <= kVarEps) continue;
                    double dot = 0.0;
                    for (int ty = 0; ty < th; ++ty) {
                        const float* row = &g.pixels[static_cast<size_t>(y0 + ty) * rw + x0];
                        const double* trow = &t_centered[static_cast<size_t>(ty) * tw];
                        for (int tx = 0; tx < tw; ++tx) dot += trow[tx] * row[tx];
                    }
                    const double score = dot / (t_norm * std::sqrt(w_ss));
                    if (best_x < 0 || score > best) {
                        best = score;
                        best_x = x0;
                        best_y = y0;
                    }
                }
            }
        }

        TrackOutput out;
        if (best_x < 0) {
            // no usable signal (flat template or flat region): hold position
            out.box = s.box;
            out.confidence = 0.5;
            return out;
        }
        const double local_cx = best_x + tw / 2.0;
        const double local_cy = best_y + th / 2.0;
        BoundingBox local{local_cx - s.box.w / 2.0, local_cy - s.box.h / 2.0, s.box.w,
                          s.box.h};
        out.box = map.to_frame(local);
        out.confidence = std::clamp((best + 1.0) / 2.0, 0.0, 1.0);
        s.box = out.box;
        return out;
    }

    TrackOutput step(State& s, const Frame& frame) const {
        auto [region, map] = extract_region(s, frame);
        return step_region(s, region, map);
    }

private:
    NccParams params_;
};

}  // namespace blurbench

#endif  // BLURBENCH_NCC_HPP_
