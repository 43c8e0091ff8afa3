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

// Shared test helpers and independent oracles. Everything here must stay
// independent of the library code paths it is used to check.

#ifndef BLURBENCH_TESTS_TESTUTIL_HPP_
#define BLURBENCH_TESTS_TESTUTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "blurbench/core.hpp"

namespace testutil {

/// Fine-grid rasterization IoU oracle. Boxes must have coordinates on the
/// 1/res pixel lattice; cell membership is then exact and so is the count.
inline double iou_rasterized(const blurbench::BoundingBox& a, const blurbench::BoundingBox& b,
                             int res = 10) {
    const auto snap = [res](double v) { return static_cast<long>(std::llround(v * res)); };
    const long ax0 = snap(a.x), ay0 = snap(a.y), ax1 = snap(a.x + a.w), ay1 = snap(a.y + a.h);
    const long bx0 = snap(b.x), by0 = snap(b.y), bx1 = snap(b.x + b.w), by1 = snap(b.y + b.h);
    const long x_lo = std::min(ax0, bx0), x_hi = std::max(ax1, bx1);
    const long y_lo = std::min(ay0, by0), y_hi = std::max(ay1, by1);
    long inter = 0, uni = 0;
    for (long y = y_lo; y < y_hi; ++y) {
        const bool in_ay = (y >= ay0 && y < ay1), in_by = (y >= by0 && y < by1);
        for (long x = x_lo; x < x_hi; ++x) {
            const bool in_a = in_ay && x >= ax0 && x < ax1;
            const bool in_b = in_by && x >= bx0 && x < bx1;
            inter += (in_a && in_b);
            uni += (in_a || in_b);
        }
    }
    return static_cast<double>(inter) / static_cast<double>(uni);
}

/// Platform-stable uniform helpers (std distributions are not pinned by the
/// standard; mt19937 itself is).
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen() % static_cast<uint64_t>(hi - lo + 1));
    }
};

/// Frame filled from a function of (x, y, c).
template <class F>
blurbench::Frame make_frame(int w, int h, int channels, F&& f) {
    blurbench::Frame out(w, h, channels);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < channels; ++c)
                out.at(x, y, c) = static_cast<float>(f(x, y, c));
    return out;
}

/// Deterministic textured test image (independent of scene.hpp's noise);
/// a cosine mixture with content up to near-Nyquist frequencies.
inline blurbench::Frame textured_frame(int w, int h, uint64_t seed = 7) {
    Rng rng(seed);
    double ax[12], ay[12], ph[12], amp[12];
    for (int i = 0; i < 12; ++i) {
        ax[i] = rng.uniform(0.05, 2.5);
        ay[i] = rng.uniform(0.05, 2.5);
        ph[i] = rng.uniform(0.0, 6.28);
        amp[i] = rng.uniform(5.0, 20.0);
    }
    return make_frame(w, h, 1, [&](int x, int y, int) {
        double v = 128.0;
        for (int i = 0; i < 12; ++i) v += amp[i] * std::cos(ax[i] * x + ay[i] * y + ph[i]);
        return std::clamp(v, 0.0, 255.0);
    });
}

/// Spatial convolution with reflected boundary; forward-blur oracle for the
/// Wiener tests.
inline blurbench::Frame convolve_reflect(const blurbench::Frame& f,
                                         const std::vector<double>& kernel, int kw, int kh) {
    const int rx = kw / 2, ry = kh / 2;
    blurbench::Frame out(f.width, f.height, f.channels);
    const auto reflect = [](int i, int n) {
        if (n == 1) return 0;
        const int period = 2 * n - 2;
        int j = i % period;
        if (j < 0) j += period;
        return j < n ? j : period - j;
    };
    for (int c = 0; c < f.channels; ++c)
        for (int y = 0; y < f.height; ++y)
            for (int x = 0; x < f.width; ++x) {
                double acc = 0.0;
                for (int j = 0; j < kh; ++j)
                    for (int i = 0; i < kw; ++i) {
                        const int sx = reflect(x + i - rx, f.width);
                        const int sy = reflect(y + j - ry, f.height);
                        acc += kernel[static_cast<size_t>(j) * kw + i] * f.at(sx, sy, c);
                    }
                out.at(x, y, c) = static_cast<float>(acc);
            }
    return out;
}

inline double psnr(const blurbench::Frame& a, const blurbench::Frame& b) {
    double mse = 0.0;
    for (size_t i = 0; i < a.pixel_count(); ++i) {
        const double d = a.pixels[i] - b.pixels[i];
        mse += d * d;
    }
    mse /= static_cast<double>(a.pixel_count());
    return 10.0 * std::log10(255.0 * 255.0 / std::max(mse, 1e-12));
}

/// Scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("blurbench_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

}  // namespace testutil

#endif  // BLURBENCH_TESTS_TESTUTIL_HPP_
