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

// Report emission: CSV summary tables plus hand-emitted SVG charts (fixed
// 800x600 viewBox, no plotting dependency). Charts: blur-robustness plot
// (level vs AUC), normalized robustness curves, NRS/mean/std bars, and
// per-level AUC-gain bars.

#ifndef BLURBENCH_REPORT_HPP_
#define BLURBENCH_REPORT_HPP_

#include <sstream>

#include "blurbench/bench.hpp"

namespace blurbench {

namespace detail {

inline const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                 "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
inline constexpr int kPaletteSize = 8;

// chart geometry: 800x600 canvas with fixed margins
struct ChartFrame {
    double x0 = 90, y0 = 40, x1 = 760, y1 = 540;
    double map_x(double t) const { return x0 + t * (x1 - x0); }        // t in [0,1]
    double map_y(double v, double lo, double hi) const {
        return y1 - (v - lo) / (hi - lo) * (y1 - y0);
    }
};

inline std::string svg_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct SvgBuilder {
    std::ostringstream body;

    SvgBuilder& line(double x1, double y1, double x2, double y2, const char* stroke = "#333",
                     double width = 1.0) {
        body << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
             << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
        return *this;
    }
    SvgBuilder& rect(double x, double y, double w, double h, const std::string& fill) {
        body << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
             << "\" fill=\"" << fill << "\"/>\n";
        return *this;
    }
    SvgBuilder& text(double x, double y, const std::string& s, int size = 13,
                     const char* anchor = "start", const char* fill = "#222") {
        body << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
             << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\" fill=\"" << fill
             << "\">" << svg_escape(s) << "</text>\n";
        return *this;
    }
    SvgBuilder& polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& stroke) {
        body << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : pts) body << x << ',' << y << ' ';
        body << "\"/>\n";
        for (const auto& [x, y] : pts)
            body << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"" << stroke
                 << "\"/>\n";
        return *this;
    }

    void write(const std::filesystem::path& path, const std::string& title) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n"
            << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n"
            << "<text x=\"400\" y=\"24\" font-size=\"17\" font-family=\"sans-serif\" "
               "text-anchor=\"middle\" fill=\"#111\">"
            << svg_escape(title) << "</text>\n"
            << body.str() << "</svg>\n";
    }
};

inline void draw_axes(SvgBuilder& svg, const ChartFrame& cf, double y_lo, double y_hi,
                      int y_ticks, const std::vector<std::string>& x_labels,
                      const std::string& y_label) {
    svg.line(cf.x0, cf.y0, cf.x0, cf.y1).line(cf.x0, cf.y1, cf.x1, cf.y1);
    for (int i = 0; i <= y_ticks; ++i) {
        const double v = y_lo + (y_hi - y_lo) * i / y_ticks;
        const double y = cf.map_y(v, y_lo, y_hi);
        svg.line(cf.x0 - 4, y, cf.x0, y);
        svg.line(cf.x0, y, cf.x1, y, "#dddddd", 0.5);
        svg.text(cf.x0 - 8, y + 4, format_double(std::round(v * 1000) / 1000), 12, "end");
    }
    for (size_t i = 0; i < x_labels.size(); ++i) {
        const double t = x_labels.size() == 1
                             ? 0.5
                             : static_cast<double>(i) / (x_labels.size() - 1);
        const double x = cf.map_x(t);
        svg.line(x, cf.y1, x, cf.y1 + 4);
        svg.text(x, cf.y1 + 20, x_labels[i], 12, "middle");
    }
    svg.text(18, (cf.y0 + cf.y1) / 2, y_label, 13, "middle");
}

inline void draw_legend(SvgBuilder& svg, const std::vector<std::string>& names) {
    double y = 50;
    for (size_t i = 0; i < names.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        svg.rect(640, y - 9, 18, 4, color);
        svg.text(664, y - 4, names[i], 12);
        y += 18;
    }
}

}  // namespace detail

/// Level-vs-AUC polylines, one per tracker.
inline void write_robustness_svg(const std::vector<SummaryRow>& rows,
                                 const std::filesystem::path& path) {
    detail::ChartFrame cf;
    detail::SvgBuilder svg;
    std::vector<std::string> x_labels;
    for (int level : kBlurLevels) x_labels.push_back("L=" + std::to_string(level));
    detail::draw_axes(svg, cf, 0.0, 1.0, 5, x_labels, "AUC");

    std::map<std::string, std::map<int, double>> by_tracker;
    for (const SummaryRow& r : rows) by_tracker[r.tracker][r.level] = r.auc;
    std::vector<std::string> names;
    size_t idx = 0;
    for (const auto& [name, auc_by_level] : by_tracker) {
        std::vector<std::pair<double, double>> pts;
        for (size_t i = 0; i < kBlurLevels.size(); ++i) {
            const auto it = auc_by_level.find(kBlurLevels[i]);
            if (it == auc_by_level.end()) continue;
            pts.push_back({cf.map_x(static_cast<double>(i) / (kBlurLevels.size() - 1)),
                           cf.map_y(it->second, 0.0, 1.0)});
        }
        svg.polyline(pts, detail::kPalette[idx % detail::kPaletteSize]);
        names.push_back(name);
        ++idx;
    }
    detail::draw_legend(svg, names);
    svg.write(path, "Blur robustness plot (AUC per blur level)");
}

/// Normalized robustness curves recomputed from the pooled per-frame IoUs.
inline void write_nrc_svg(const ResultStore& store, const std::filesystem::path& path) {
    detail::ChartFrame cf;
    detail::SvgBuilder svg;
    std::vector<std::string> x_labels;
    for (int level : kBlurLevels) x_labels.push_back("L=" + std::to_string(level));

    std::vector<std::pair<std::string, NormalizedRobustness>> curves;
    double y_hi = 1.05;
    for (const auto& [tracker, by_level] : pooled_ious(store)) {
        bool complete = true;
        for (int level : kBlurLevels)
            complete = complete && by_level.count(level) &&
                       by_level.at(level).size() == by_level.at(1).size();
        if (!complete) continue;
        const auto i_succ = success_frames(by_level.at(1));
        if (i_succ.empty()) continue;
        try {
            const auto curve = nrc(by_level, i_succ);
            for (double u : curve.u) y_hi = std::max(y_hi, u + 0.05);
            curves.push_back({tracker, curve});
        } catch (const std::exception&) {
        }
    }
    detail::draw_axes(svg, cf, 0.0, y_hi, 5, x_labels, "normalized IoU");

    std::vector<std::string> names;
    for (size_t idx = 0; idx < curves.size(); ++idx) {
        std::vector<std::pair<double, double>> pts;
        for (size_t i = 0; i < kBlurLevels.size(); ++i)
            pts.push_back({cf.map_x(static_cast<double>(i) / (kBlurLevels.size() - 1)),
                           cf.map_y(curves[idx].second.u[i], 0.0, y_hi)});
        svg.polyline(pts, detail::kPalette[idx % detail::kPaletteSize]);
        names.push_back(curves[idx].first + " (NRS " +
                        detail::format_double(std::round(curves[idx].second.nrs * 1000) / 1000) +
                        ")");
    }
    detail::draw_legend(svg, names);
    svg.write(path, "Normalized robustness curves");
}

/// NRS / mean AUC / std AUC bars per tracker.
inline void write_nrs_bars_svg(const std::vector<SummaryRow>& rows,
                               const std::filesystem::path& path) {
    struct Entry {
        std::string tracker;
        double nrs, mean_auc, std_auc;
    };
    std::vector<Entry> entries;
    std::map<std::string, bool> seen;
    for (const SummaryRow& r : rows) {
        if (!r.nrs || !r.mean_auc || !r.std_auc || seen[r.tracker]) continue;
        seen[r.tracker] = true;
        entries.push_back({r.tracker, *r.nrs, *r.mean_auc, *r.std_auc});
    }

    detail::ChartFrame cf;
    detail::SvgBuilder svg;
    double y_hi = 1.05;
    for (const auto& e : entries) y_hi = std::max({y_hi, e.nrs + 0.05, e.mean_auc + 0.05});
    std::vector<std::string> x_labels;
    for (const auto& e : entries) x_labels.push_back(e.tracker);
    if (x_labels.empty()) x_labels.push_back("-");
    detail::draw_axes(svg, cf, 0.0, y_hi, 5, x_labels, "score");

    const double group_w = (cf.x1 - cf.x0) / std::max<size_t>(1, entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
        const double gx = cf.x0 + group_w * i + group_w / 2.0;
        const double bw = std::min(28.0, group_w / 4.0);
        const double vals[3] = {entries[i].nrs, entries[i].mean_auc, entries[i].std_auc};
        const char* colors[3] = {"#1f77b4", "#2ca02c", "#ff7f0e"};
        for (int k = 0; k < 3; ++k) {
            const double y = cf.map_y(vals[k], 0.0, y_hi);
            svg.rect(gx + (k - 1.5) * bw, y, bw - 2, cf.y1 - y, colors[k]);
        }
    }
    svg.rect(640, 41, 18, 10, "#1f77b4");
    svg.text(664, 50, "NRS", 12);
    svg.rect(640, 59, 18, 10, "#2ca02c");
    svg.text(664, 68, "mean AUC", 12);
    svg.rect(640, 77, 18, 10, "#ff7f0e");
    svg.text(664, 86, "std AUC", 12);
    svg.write(path, "NRS, mean AUC and std AUC per tracker");
}

/// AUC gain bars (levels 2..16 vs level 1), grouped per tracker.
inline void write_gains_svg(const std::vector<SummaryRow>& rows,
                            const std::filesystem::path& path) {
    std::map<std::string, std::map<int, double>> gains;
    for (const SummaryRow& r : rows)
        if (r.level != 1) gains[r.tracker][r.level] = r.gain;

    double span = 0.05;
    for (const auto& [name, by_level] : gains)
        for (const auto& [level, g] : by_level) span = std::max(span, std::abs(g) * 1.15);

    detail::ChartFrame cf;
    detail::SvgBuilder svg;
    std::vector<std::string> x_labels;
    for (const auto& [name, by_level] : gains) x_labels.push_back(name);
    if (x_labels.empty()) x_labels.push_back("-");
    detail::draw_axes(svg, cf, -span, span, 4, x_labels, "AUC gain vs L=1");
    const double y_zero = cf.map_y(0.0, -span, span);
    svg.line(cf.x0, y_zero, cf.x1, y_zero, "#333", 1.0);

    const double group_w = (cf.x1 - cf.x0) / std::max<size_t>(1, gains.size());
    size_t gi = 0;
    const int levels[4] = {2, 4, 8, 16};
    for (const auto& [name, by_level] : gains) {
        const double gx = cf.x0 + group_w * gi + group_w / 2.0;
        const double bw = std::min(22.0, group_w / 5.0);
        for (int k = 0; k < 4; ++k) {
            const auto it = by_level.find(levels[k]);
            if (it == by_level.end()) continue;
            const double y = cf.map_y(it->second, -span, span);
            svg.rect(gx + (k - 2.0) * bw, std::min(y, y_zero), bw - 2, std::abs(y - y_zero),
                     detail::kPalette[k]);
        }
        ++gi;
    }
    for (int k = 0; k < 4; ++k) {
        svg.rect(640, 41.0 + 18 * k, 18, 10, detail::kPalette[k]);
        svg.text(664, 50.0 + 18 * k, "L=" + std::to_string(levels[k]), 12);
    }
    svg.write(path, "AUC gain of blurred levels over the sharp level");
}

/// Writes all CSV tables and SVG charts for a store.
inline void emit_report(const ResultStore& store, const std::filesystem::path& out_dir) {
    if (store.cells.empty()) throw std::invalid_argument("emit_report: empty store");
    std::filesystem::create_directories(out_dir);
    const auto rows = summarize(store);
    write_summary_csv(rows, out_dir / "summary.csv");
    write_gains_csv(rows, out_dir / "gains.csv");
    write_robustness_svg(rows, out_dir / "robustness_plot.svg");
    write_nrc_svg(store, out_dir / "nrc_curves.svg");
    write_nrs_bars_svg(rows, out_dir / "nrs_bars.svg");
    write_gains_svg(rows, out_dir / "gain_bars.svg");
}

}  // namespace blurbench

#endif  // BLURBENCH_REPORT_HPP_
