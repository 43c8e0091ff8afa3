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

// MOSSE-style correlation filter tracker.
//
// The filter is the FFT-domain ridge regression
//     W = sum(G .* conj(F)) / (sum(F .* conj(F)) + lambda)
// trained on the init patch against a Gaussian desired response G and updated
// online with learning rate eta. The response to a new patch is
// real(ifft2(F .* W)); its peak offset from the window center is the target
// displacement. Confidence is a logistic map of the peak-to-sidelobe ratio.
//
// The correlation window is the power-of-two size closest above
// region_scale * target size, so all transforms are radix-2.

#ifndef BLURBENCH_MOSSE_HPP_
#define BLURBENCH_MOSSE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "blurbench/fft.hpp"
#include "blurbench/tracker.hpp"

namespace blurbench {

struct MosseParams {
    double region_scale = kDefaultRegionScale;
    double lambda = 1e-2;          // ridge regularizer
    double eta = 0.125;            // online learning rate
    double sigma_divisor = 16.0;   // desired-response sigma = target_diagonal / this
    double psr_mu = 8.0;           // PSR mapped to confidence 0.5
    double psr_scale = 2.0;
    int psr_exclusion = 11;        // peak window excluded from sidelobe stats
    int max_window = 512;
};

class MosseTracker {
public:
    struct State {
        bool initialized = false;
        BoundingBox box;
        int win_w = 0, win_h = 0;
        int frame_width = 0, frame_height = 0;
        std::vector<fft::cplx> response_target;  // G, precomputed spectrum
        std::vector<fft::cplx> numerator;        // sum G .* conj(F)
        std::vector<double> denominator;         // sum |F|^2
    };

    explicit MosseTracker(MosseParams params = {}) : params_(params) {}

    [[nodiscard]] std::string name() const { return "mosse"; }

    [[nodiscard]] State init(const Frame& frame, const BoundingBox& box) const {
        detail::check_init_box(frame, box, "MosseTracker::init");
        State s;
        s.initialized = true;
        s.box = box;
        s.frame_width = frame.width;
        s.frame_height = frame.height;
        s.win_w = window_size(box.w);
        s.win_h = window_size(box.h);

        // Gaussian desired response centered in the window
        const double sigma =
            std::max(1.0, std::hypot(box.w, box.h) / params_.sigma_divisor);
        std::vector<fft::cplx> g(static_cast<size_t>(s.win_w) * s.win_h);
        const double cx = s.win_w / 2.0, cy = s.win_h / 2.0;
        for (int y = 0; y < s.win_h; ++y)
            for (int x = 0; x < s.win_w; ++x) {
                const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                g[static_cast<size_t>(y) * s.win_w + x] =
                    fft::cplx(std::exp(-d2 / (2.0 * sigma * sigma)), 0.0);
            }
        fft::fft2d(g, s.win_w, s.win_h, false);
        s.response_target = std::move(g);

        const auto patch =
            crop_centered(to_gray(frame), box.center_x(), box.center_y(), s.win_w, s.win_h)
                .first;
        const auto f_spec = preprocess_fft(patch, Window::kHann);
        s.numerator.resize(f_spec.size());
        s.denominator.resize(f_spec.size());
        for (size_t i = 0; i < f_spec.size(); ++i) {
            s.numerator[i] = s.response_target[i] * std::conj(f_spec[i]);
            s.denominator[i] = std::norm(f_spec[i]);
        }
        return s;
    }

    [[nodiscard]] std::pair<Frame, RegionMapping> extract_region(const State& s,
                                                                 const Frame& frame) const {
        if (!s.initialized) throw std::invalid_argument("MosseTracker: uninitialized state");
        if (frame.width != s.frame_width || frame.height != s.frame_height)
            throw std::invalid_argument("MosseTracker: frame dimension mismatch");
        return crop_centered(frame, s.box.center_x(), s.box.center_y(), s.win_w, s.win_h);
    }

    /// Correlation response of the current filter over a search region;
    /// exposed so the shift-equivariance property is directly testable.
    ///
    /// Training patches carry a Hann window (the filter must describe the
    /// centered target, not the surround); response inputs only get a
    /// flat-top taper, so the peak follows circular shifts that keep the
    /// target inside the flat region exactly.
    [[nodiscard]] std::vector<double> response_map(const State& s, const Frame& region) const {
        if (!s.initialized) throw std::invalid_argument("MosseTracker: uninitialized state");
        if (region.width != s.win_w || region.height != s.win_h)
            throw std::invalid_argument("MosseTracker: region dimension mismatch");
        auto f_spec = preprocess_fft(to_gray(region), Window::kTukey);
        for (size_t i = 0; i < f_spec.size(); ++i) {
            const fft::cplx w = s.numerator[i] / (s.denominator[i] + params_.lambda);
            f_spec[i] *= w;
        }
        fft::fft2d(f_spec, s.win_w, s.win_h, true);
        std::vector<double> resp(f_spec.size());
        for (size_t i = 0; i < f_spec.size(); ++i) resp[i] = f_spec[i].real();
        return resp;
    }

    TrackOutput step_region(State& s, const Frame& region, const RegionMapping& map) const {
        const auto resp = response_map(s, region);

        // peak, ties broken by smallest row-major index
        size_t peak_idx = 0;
        double peak = resp[0], low = resp[0];
        for (size_t i = 1; i < resp.size(); ++i) {
            if (resp[i] > peak) {
                peak = resp[i];
                peak_idx = i;
            }
            low = std::min(low, resp[i]);
        }

        const int half_w = s.win_w / 2, half_h = s.win_h / 2;
        double dx = 0.0, dy = 0.0;
        double psr = 0.0;
        constexpr double kFlatEps = 1e-12;
        if (peak - low > kFlatEps) {
            const int px = static_cast<int>(peak_idx) % s.win_w;
            const int py = static_cast<int>(peak_idx) / s.win_w;
            dx = px - half_w;
            dy = py - half_h;
            psr = peak_to_sidelobe(resp, s.win_w, s.win_h, px, py);
        }
        // flat response: hold position, confidence bottoms out via psr = 0

        // the region was cropped with the previous box center at (half_w, half_h)
        const double local_cx = half_w + dx;
        const double local_cy = half_h + dy;
        BoundingBox local{local_cx - s.box.w / 2.0, local_cy - s.box.h / 2.0, s.box.w, s.box.h};

        TrackOutput out;
        out.box = map.to_frame(local);
        out.confidence =
            std::clamp(detail::logistic((psr - params_.psr_mu) / params_.psr_scale), 0.0, 1.0);
        s.box = out.box;

        // online update on the patch re-centered at the located position
        const auto patch = crop_centered(region, local_cx, local_cy, s.win_w, s.win_h).first;
        const auto f_spec = preprocess_fft(to_gray(patch), Window::kHann);
        const double eta = params_.eta;
        for (size_t i = 0; i < f_spec.size(); ++i) {
            s.numerator[i] = (1.0 - eta) * s.numerator[i] +
                             eta * s.response_target[i] * std::conj(f_spec[i]);
            s.denominator[i] = (1.0 - eta) * s.denominator[i] + eta * std::norm(f_spec[i]);
        }
        return out;
    }

    TrackOutput step(State& s, const Frame& frame) const {
        auto [region, map] = extract_region(s, frame);
        return step_region(s, region, map);
    }

private:
    [[nodiscard]] int window_size(double target_side) const {
        const int wanted = std::max(4, round_to_int(params_.region_scale * target_side));
        return std::min(params_.max_window, fft::next_pow2(wanted));
    }

    enum class Window { kHann, kTukey };

    /// Flat-top tapered cosine: 1 over the window center, cosine falloff over
    /// the outer n/8 band. Suppresses wrap-seam energy without weighting the
    /// response toward the window center.
    [[nodiscard]] static double tukey(int i, int n) {
        const int taper = std::max(2, n / 8);
        const int d = std::min(i, n - 1 - i);
        if (d >= taper) return 1.0;
        return 0.5 * (1.0 - std::cos(std::numbers::pi * d / taper));
    }

    [[nodiscard]] static double hann(int i, int n) {
        return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
    }

    /// log intensity, zero-mean unit-std normalization, window, FFT.
    /// The spectrum is scaled to orthonormal convention (1/sqrt(N)) so the
    /// mean bin power of a unit-variance patch is about 1 and lambda
    /// regularizes on a meaningful scale.
    [[nodiscard]] std::vector<fft::cplx> preprocess_fft(const Frame& gray, Window window) const {
        const int w = gray.width, h = gray.height;
        const size_t n = static_cast<size_t>(w) * h;
        std::vector<double> vals(n);
        double sum = 0.0;
        for (size_t i = 0; i < n; ++i) {
            vals[i] = std::log1p(static_cast<double>(gray.pixels[i]));
            sum += vals[i];
        }
        const double mean = sum / static_cast<double>(n);
        double ss = 0.0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        const double inv_std = 1.0 / (std::sqrt(ss / static_cast<double>(n)) + 1e-5);

        std::vector<fft::cplx> out(n);
        for (int y = 0; y < h; ++y) {
            const double wy = window == Window::kHann ? hann(y, h) : tukey(y, h);
            for (int x = 0; x < w; ++x) {
                const double wx = window == Window::kHann ? hann(x, w) : tukey(x, w);
                out[static_cast<size_t>(y) * w + x] = fft::cplx(
                    (vals[static_cast<size_t>(y) * w + x] - mean) * inv_std * wx * wy, 0.0);
            }
        }
        fft::fft2d(out, w, h, false);
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (auto& v : out) v *= scale;
        return out;
    }

    [[nodiscard]] double peak_to_sidelobe(const std::vector<double>& resp, int w, int h,
                                          int px, int py) const {
        const int r = params_.psr_exclusion / 2;
        double sum = 0.0, sum_sq = 0.0;
        size_t n = 0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                if (std::abs(x - px) <= r && std::abs(y - py) <= r) continue;
                const double v = resp[static_cast<size_t>(y) * w + x];
                sum += v;
                sum_sq += v * v;
                ++n;
            }
        if (n == 0) return 0.0;
        const double mean = sum / static_cast<double>(n);
        const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
        const double sd = std::sqrt(var);
        if (sd < 1e-9) return 0.0;
        return (resp[static_cast<size_t>(py) * w + px] - mean) / sd;
    }

    MosseParams params_;
};

}  // namespace blurbench

#endif  // BLURBENCH_MOSSE_HPP_
