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

// Deblur operators: linear motion PSFs, frequency-domain Wiener deconvolution
// with a PSF grid search for blind use, and a subprocess bridge so external
// (e.g. learned) deblurrers can be plugged in through image files.

#ifndef BLURBENCH_DEBLUR_HPP_
#define BLURBENCH_DEBLUR_HPP_

#include <functional>
#include <numbers>

#include "blurbench/assessor.hpp"
#include "blurbench/core.hpp"
#include "blurbench/fft.hpp"
#include "blurbench/io.hpp"
#include "blurbench/subprocess.hpp"

namespace blurbench {

inline constexpr double kDefaultWienerK = 0.01;
inline constexpr double kDefaultExternalTimeout = 30.0;  // seconds

/// Normalized linear motion-smear kernel.
struct MotionPSF {
    int length = 1;        // px
    double angle = 0.0;    // degrees; 0 = horizontal
    int width = 1;
    int height = 1;
    std::vector<double> weights;  // row-major, sum to 1

    [[nodiscard]] double at(int x, int y) const {
        return weights[static_cast<size_t>(y) * width + x];
    }
    [[nodiscard]] bool is_identity() const { return width == 1 && height == 1; }
};

/// Rasterizes a length x 1 px rectangle rotated by angle, by supersampled
/// cell coverage, normalized to unit sum. length 1 gives the identity kernel.
inline MotionPSF linear_psf(int length, double angle_deg) {
    if (length < 1) throw std::invalid_argument("linear_psf: non-positive length");
    const double theta = angle_deg * std::numbers::pi / 180.0;
    const double c = std::cos(theta), s = std::sin(theta);
    const double half_len = length / 2.0;
    const double hx = half_len * std::abs(c) + 0.5 * std::abs(s);
    const double hy = half_len * std::abs(s) + 0.5 * std::abs(c);
    const int rx = static_cast<int>(std::ceil(hx - 0.5 - 1e-12));
    const int ry = static_cast<int>(std::ceil(hy - 0.5 - 1e-12));

    MotionPSF psf;
    psf.length = length;
    psf.angle = angle_deg;
    psf.width = 2 * rx + 1;
    psf.height = 2 * ry + 1;
    psf.weights.assign(static_cast<size_t>(psf.width) * psf.height, 0.0);

    constexpr int kSamples = 32;
    double total = 0.0;
    for (int j = -ry; j <= ry; ++j) {
        for (int i = -rx; i <= rx; ++i) {
            int hits = 0;
            for (int sy = 0; sy < kSamples; ++sy) {
                const double y = j - 0.5 + (sy + 0.5) / kSamples;
                for (int sx = 0; sx < kSamples; ++sx) {
                    const double x = i - 0.5 + (sx + 0.5) / kSamples;
                    const double u = c * x + s * y;   // along the smear
                    const double v = -s * x + c * y;  // across it
                    if (std::abs(u) <= half_len && std::abs(v) <= 0.5) ++hits;
                }
            }
            const double w = static_cast<double>(hits);
            psf.weights[static_cast<size_t>(j + ry) * psf.width + (i + rx)] = w;
            total += w;
        }
    }
    if (total <= 0.0) throw std::runtime_error("linear_psf: empty rasterization");
    for (double& w : psf.weights) w /= total;
    return psf;
}

namespace detail {

/// Mirror-folds an index into [0, n); period 2n-2 ("reflect101"), repeated
/// folding handles pads larger than the image.
inline int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n - 2;
    int j = i % period;
    if (j < 0) j += period;
    return j < n ? j : period - j;
}

}  // namespace detail

/// Frequency-domain Wiener filter: X = conj(H) * Y / (|H|^2 + K), applied per
/// channel. The input is reflect-padded past the kernel radius (and up to a
/// power-of-two transform size) and the pad ring is edge-tapered -- cross
/// faded with a circularly blurred copy -- so the wrap seam does not ring
/// through the deconvolution. The result is cropped back and clipped to
/// [0, 255].
inline Frame wiener_deblur(const Frame& f, const MotionPSF& psf, double k = kDefaultWienerK) {
    if (k <= 0.0) throw std::invalid_argument("wiener_deblur: K must be positive");
    if (psf.weights.empty() || psf.width > f.width || psf.height > f.height)
        throw std::invalid_argument("wiener_deblur: degenerate kernel");

    const int krx = psf.width / 2, kry = psf.height / 2;
    const int pw = fft::next_pow2(f.width + 2 * krx);
    const int ph = fft::next_pow2(f.height + 2 * kry);
    const int ox = (pw - f.width) / 2;
    const int oy = (ph - f.height) / 2;

    // kernel spectrum, centered at the origin (wrapped) so it adds no shift
    std::vector<fft::cplx> kbuf(static_cast<size_t>(pw) * ph, fft::cplx(0.0, 0.0));
    for (int y = 0; y < psf.height; ++y)
        for (int x = 0; x < psf.width; ++x) {
            const int dx = ((x - krx) % pw + pw) % pw;
            const int dy = ((y - kry) % ph + ph) % ph;
            kbuf[static_cast<size_t>(dy) * pw + dx] += psf.at(x, y);
        }
    fft::fft2d(kbuf, pw, ph, false);

    // taper weight: 1 over the original area, fading to 0 at the pad edge
    const auto ramp = [](int i, int lo, int hi, int last) {
        if (i >= lo && i < hi) return 1.0;
        const double d = (i < lo) ? static_cast<double>(i) / std::max(1, lo)
                                  : static_cast<double>(last - i) / std::max(1, last - hi + 1);
        return std::clamp(d, 0.0, 1.0);
    };

    Frame out(f.width, f.height, f.channels);
    std::vector<fft::cplx> ibuf(static_cast<size_t>(pw) * ph);
    for (int ch = 0; ch < f.channels; ++ch) {
        for (int y = 0; y < ph; ++y) {
            const int sy = detail::reflect_index(y - oy, f.height);
            for (int x = 0; x < pw; ++x) {
                const int sx = detail::reflect_index(x - ox, f.width);
                ibuf[static_cast<size_t>(y) * pw + x] = fft::cplx(f.at(sx, sy, ch), 0.0);
            }
        }
        if (ox > 0 || oy > 0) {
            auto smooth = ibuf;
            fft::fft2d(smooth, pw, ph, false);
            for (size_t i = 0; i < smooth.size(); ++i) smooth[i] *= kbuf[i];
            fft::fft2d(smooth, pw, ph, true);
            for (int y = 0; y < ph; ++y) {
                const double wy = ramp(y, oy, oy + f.height, ph - 1);
                for (int x = 0; x < pw; ++x) {
                    const double w = wy * ramp(x, ox, ox + f.width, pw - 1);
                    const size_t i = static_cast<size_t>(y) * pw + x;
                    ibuf[i] = w * ibuf[i] + (1.0 - w) * smooth[i];
                }
            }
        }
        fft::fft2d(ibuf, pw, ph, false);
        for (size_t i = 0; i < ibuf.size(); ++i) {
            const fft::cplx h = kbuf[i];
            ibuf[i] *= std::conj(h) / (std::norm(h) + k);
        }
        fft::fft2d(ibuf, pw, ph, true);
        for (int y = 0; y < f.height; ++y)
            for (int x = 0; x < f.width; ++x) {
                const double v = ibuf[static_cast<size_t>(y + oy) * pw + (x + ox)].real();
                out.at(x, y, ch) = static_cast<float>(std::clamp(v, 0.0, 255.0));
            }
    }
    return out;
}

/// PSF candidates for the blind grid search: identity plus every
/// length x angle combination, in deterministic order. Built once.
inline const std::vector<MotionPSF>& blind_psf_grid() {
    static const std::vector<MotionPSF> grid = [] {
        std::vector<MotionPSF> g;
        g.push_back(linear_psf(1, 0.0));
        for (int length : {3, 5, 9, 15})
            for (double angle : {0.0, 45.0, 90.0, 135.0}) g.push_back(linear_psf(length, angle));
        return g;
    }();
    return grid;
}

/// Mean squared intensity excess of a candidate outside the input's global
/// [min, max] range. A faithful deconvolution stays within the scene's
/// intensity range; ringing from a wrong or over-long kernel does not.
inline double ringing_energy(const Frame& input, const Frame& candidate) {
    float lo = 255.0f, hi = 0.0f;
    for (float v : input.pixels) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double acc = 0.0;
    for (float v : candidate.pixels) {
        double d = 0.0;
        if (v > hi) d = v - hi;
        if (v < lo) d = lo - v;
        acc += d * d;
    }
    return acc / static_cast<double>(candidate.pixel_count());
}

/// Candidates whose ringing energy exceeds this are never selected. Strict on
/// purpose: sharp inputs then admit at most near-identity kernels (small
/// sharpness gain), while heavily blurred inputs, whose candidates barely
/// overshoot, admit genuinely recovering ones (large gain). That asymmetry is
/// what makes the raw-vs-deblurred evidence grow with blur level.
inline constexpr double kDefaultRingingBound = 1.0;

/// Result of the blind grid search.
struct BlindDeblurResult {
    Frame frame;
    MotionPSF psf;
    double score = 0.0;
};

/// Wiener-deblurs with every grid PSF and returns the admissible candidate
/// with the highest assessor sharpness score. Admissible means ringing energy
/// within the bound; an unconstrained sharpness argmax would always favor the
/// most aggressive kernel, ringing included. The identity candidate (ringing
/// zero) keeps the search always valid; ties go to the earlier grid entry.
inline BlindDeblurResult blind_deblur(const Frame& f,
                                      const std::function<double(const Frame&)>& assessor = {},
                                      double k = kDefaultWienerK,
                                      double ringing_bound = kDefaultRingingBound) {
    const auto score =
        assessor ? assessor : [](const Frame& frame) { return sharpness_score(frame); };
    BlindDeblurResult best;
    bool first = true;
    for (const MotionPSF& psf : blind_psf_grid()) {
        if (psf.width > f.width || psf.height > f.height) continue;
        Frame candidate = psf.is_identity() ? f : wiener_deblur(f, psf, k);
        if (!psf.is_identity() && ringing_energy(f, candidate) > ringing_bound) continue;
        const double s = score(candidate);
        if (first || s > best.score) {
            best = {std::move(candidate), psf, s};
            first = false;
        }
    }
    return best;
}

/// Runs an external deblurrer through image files. The command template must
/// contain {input} and {output} placeholders.
inline Frame external_deblur(const Frame& f, const std::string& command_template,
                             double timeout_seconds = kDefaultExternalTimeout) {
    if (command_template.find("{input}") == std::string::npos ||
        command_template.find("{output}") == std::string::npos)
        throw std::invalid_argument(
            "external_deblur: command template must contain {input} and {output}");

    const auto in_path = detail::unique_temp_path("deblur_in", ".png");
    const auto out_path = detail::unique_temp_path("deblur_out", ".png");
    save_image(in_path, f);
    struct Cleanup {
        std::filesystem::path a, b;
        ~Cleanup() {
            std::error_code ec;
            std::filesystem::remove(a, ec);
            std::filesystem::remove(b, ec);
        }
    } cleanup{in_path, out_path};

    std::string cmd = detail::replace_all(command_template, "{input}", in_path.string());
    cmd = detail::replace_all(cmd, "{output}", out_path.string());
    const auto res = detail::run_command(cmd, timeout_seconds);
    if (res.timed_out) throw std::runtime_error("external deblurrer timed out: " + cmd);
    if (res.exit_code != 0)
        throw std::runtime_error("external deblurrer failed (exit " +
                                 std::to_string(res.exit_code) + "): " + cmd);
    if (!std::filesystem::exists(out_path))
        throw std::runtime_error("external deblurrer produced no output: " + cmd);
    Frame out = load_image(out_path);
    if (out.width != f.width || out.height != f.height)
        throw std::runtime_error("external deblurrer: dimension mismatch");
    return out;
}

/// Deblur operator contract used by the tracking pipelines. Implementations
/// must be safe for concurrent use across pipelines.
using Deblurrer = std::function<Frame(const Frame&)>;

inline Deblurrer identity_deblurrer() {
    return [](const Frame& f) { return f; };
}

inline Deblurrer wiener_deblurrer(const MotionPSF& psf, double k = kDefaultWienerK) {
    return [psf, k](const Frame& f) { return wiener_deblur(f, psf, k); };
}

inline Deblurrer blind_deblurrer(double k = kDefaultWienerK) {
    return [k](const Frame& f) { return blind_deblur(f, {}, k).frame; };
}

inline Deblurrer external_deblurrer(const std::string& command_template,
                                    double timeout_seconds = kDefaultExternalTimeout) {
    return [command_template, timeout_seconds](const Frame& f) {
        return external_deblur(f, command_template, timeout_seconds);
    };
}

}  // namespace blurbench

#endif  // BLURBENCH_DEBLUR_HPP_
