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

// Blur assessor: a scalar sharpness scorer plus the raw-vs-deblurred score
// difference that drives the selective tracking scheme. The reference scorer
// is log-compressed variance of the Laplacian; any Frame -> real function
// (including an external command) plugs in instead.

#ifndef BLURBENCH_ASSESSOR_HPP_
#define BLURBENCH_ASSESSOR_HPP_

#include <functional>

#include "blurbench/core.hpp"
#include "blurbench/io.hpp"
#include "blurbench/subprocess.hpp"

namespace blurbench {

/// Frame -> sharpness score; higher means sharper. Must be stateless or
/// otherwise safe for concurrent use.
using Assessor = std::function<double(const Frame&)>;

/// log(1 + population variance of the 4-neighbor Laplacian) of the grayscale
/// frame. Zero for constant frames, invariant under global intensity offsets.
inline double sharpness_score(const Frame& f) {
    if (f.width < 5 || f.height < 5)
        throw std::invalid_argument("sharpness_score: frame needs a 3x3 interior");
    const Frame g = to_gray(f);
    double sum = 0.0, sum_sq = 0.0;
    size_t n = 0;
    for (int y = 1; y + 1 < g.height; ++y)
        for (int x = 1; x + 1 < g.width; ++x) {
            const double lap = g.at(x - 1, y) + g.at(x + 1, y) + g.at(x, y - 1) +
                               g.at(x, y + 1) - 4.0 * g.at(x, y);
            sum += lap;
            sum_sq += lap * lap;
            ++n;
        }
    const double mean = sum / static_cast<double>(n);
    const double var = sum_sq / static_cast<double>(n) - mean * mean;
    return std::log1p(std::max(0.0, var));
}

inline Assessor laplacian_assessor() {
    return [](const Frame& f) { return sharpness_score(f); };
}

/// External assessor: writes the frame to a temporary image, substitutes it
/// for {input} in the command template, and parses a single real number from
/// the command's standard output.
inline Assessor external_assessor(const std::string& command_template,
                                  double timeout_seconds = 30.0) {
    if (command_template.find("{input}") == std::string::npos)
        throw std::invalid_argument("external_assessor: command template must contain {input}");
    return [command_template, timeout_seconds](const Frame& f) {
        const auto in_path = detail::unique_temp_path("assess_in", ".png");
        save_image(in_path, f);
        struct Cleanup {
            std::filesystem::path p;
            ~Cleanup() {
                std::error_code ec;
                std::filesystem::remove(p, ec);
            }
        } cleanup{in_path};
        const std::string cmd =
            detail::replace_all(command_template, "{input}", in_path.string());
        const auto res = detail::run_command(cmd, timeout_seconds);
        if (res.timed_out) throw std::runtime_error("external assessor timed out: " + cmd);
        if (res.exit_code != 0)
            throw std::runtime_error("external assessor failed (exit " +
                                     std::to_string(res.exit_code) + "): " + cmd);
        try {
            return std::stod(res.output);
        } catch (const std::exception&) {
            throw std::runtime_error("external assessor: cannot parse score from output '" +
                                     res.output + "'");
        }
    };
}

/// Assessor scores of a raw region and its deblurred version; the absolute
/// difference is the deblurring-necessity evidence of the selective scheme.
struct BlurEvidence {
    double score_raw = 0.0;
    double score_deblurred = 0.0;
    double evidence = 0.0;
};

inline BlurEvidence blur_evidence(const Frame& raw, const Frame& deblurred,
                                  const Assessor& assessor) {
    if (!raw.same_shape(deblurred))
        throw std::invalid_argument("blur_evidence: dimension mismatch");
    BlurEvidence ev;
    ev.score_raw = assessor(raw);
    ev.score_deblurred = assessor(deblurred);
    ev.evidence = std::abs(ev.score_deblurred - ev.score_raw);
    return ev;
}

inline BlurEvidence blur_evidence(const Frame& raw, const Frame& deblurred) {
    return blur_evidence(raw, deblurred, laplacian_assessor());
}

}  // namespace blurbench

#endif  // BLURBENCH_ASSESSOR_HPP_
