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

// Experiment runner: executes every (scene x level x tracker x scheme) cell
// of a plan, persists per-frame records as JSON, and aggregates summaries.
//
// Cells are content-hashed, so a rerun of a completed plan loads results
// instead of recomputing them. Workers parallelize over scenes; results are
// assembled in plan order, so serial and parallel runs produce identical
// stores.

#ifndef BLURBENCH_BENCH_HPP_
#define BLURBENCH_BENCH_HPP_

#include <json.hpp>

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "blurbench/blur.hpp"
#include "blurbench/io.hpp"
#include "blurbench/metrics.hpp"
#include "blurbench/mosse.hpp"
#include "blurbench/ncc.hpp"
#include "blurbench/scene.hpp"
#include "blurbench/select.hpp"

namespace blurbench {

// ---------------------------------------------------------------------------
// plan model

/// A scene is either a synthetic config or a directory of frames + truth.
struct SceneSource {
    std::string id;
    bool synthetic = true;
    SceneConfig config;
    std::filesystem::path frame_dir;
    std::filesystem::path annotation_file;
};

struct TrackerConfig {
    std::string kind = "mosse";  // "ncc" or "mosse"
    NccParams ncc;
    MosseParams mosse;
};

struct DeblurSpec {
    enum class Mode { kNone, kWiener, kBlind, kExternal } mode = Mode::kBlind;
    int psf_length = 9;  // fixed-PSF Wiener mode
    double psf_angle = 0.0;
    double k = kDefaultWienerK;
    std::string command_template;
    double timeout = kDefaultExternalTimeout;
    bool full_frame = false;  // full scheme: deblur whole frames, not regions
};

struct AssessorSpec {
    bool external = false;
    std::string command_template;
    double timeout = 30.0;
};

struct ExperimentPlan {
    std::vector<SceneSource> scenes;
    std::vector<int> levels = {1, 2, 4, 8, 16};
    std::vector<TrackerConfig> trackers;
    std::vector<Scheme> schemes = {Scheme::kRaw};
    DeblurSpec deblur;
    AssessorSpec assessor;
    double theta = -1.0;  // < 0 requests calibration (see calibrate_theta)
    std::filesystem::path out_dir = "results";
    int workers = 1;
};

inline Deblurrer make_deblurrer(const DeblurSpec& spec) {
    switch (spec.mode) {
        case DeblurSpec::Mode::kNone: return identity_deblurrer();
        case DeblurSpec::Mode::kWiener:
            return wiener_deblurrer(linear_psf(spec.psf_length, spec.psf_angle), spec.k);
        case DeblurSpec::Mode::kBlind: return blind_deblurrer(spec.k);
        case DeblurSpec::Mode::kExternal:
            return external_deblurrer(spec.command_template, spec.timeout);
    }
    throw std::logic_error("unreachable");
}

inline Assessor make_assessor(const AssessorSpec& spec) {
    if (spec.external) return external_assessor(spec.command_template, spec.timeout);
    return laplacian_assessor();
}

/// Parses "none|wiener|blind|external:<template>".
inline DeblurSpec parse_deblur_spec(const std::string& s) {
    DeblurSpec spec;
    if (s == "none") {
        spec.mode = DeblurSpec::Mode::kNone;
    } else if (s == "wiener") {
        spec.mode = DeblurSpec::Mode::kWiener;
    } else if (s == "blind") {
        spec.mode = DeblurSpec::Mode::kBlind;
    } else if (s.rfind("external:", 0) == 0) {
        spec.mode = DeblurSpec::Mode::kExternal;
        spec.command_template = s.substr(9);
    } else {
        throw std::invalid_argument("unknown deblur mode: " + s);
    }
    return spec;
}

/// Parses "laplacian|external:<template>".
inline AssessorSpec parse_assessor_spec(const std::string& s) {
    AssessorSpec spec;
    if (s == "laplacian") return spec;
    if (s.rfind("external:", 0) == 0) {
        spec.external = true;
        spec.command_template = s.substr(9);
        return spec;
    }
    throw std::invalid_argument("unknown assessor: " + s);
}

// ---------------------------------------------------------------------------
// result store

struct CellResult {
    std::string scene_id;
    int level = 0;
    std::string tracker;  // label including the scheme suffix
    Scheme scheme = Scheme::kRaw;
    std::string hash;
    bool failed = false;
    std::string error;
    std::vector<FrameResult> frames;
};

struct ResultStore {
    std::vector<CellResult> cells;  // plan order: scene-major, then level, tracker, scheme
};

/// Row of the summary table; one per (tracker x level).
struct SummaryRow {
    std::string tracker;
    int level = 0;
    double auc = 0.0;
    double gain = 0.0;                  // vs level 1, when level 1 is present
    std::optional<double> nrs;          // set when all five levels are present
    std::optional<double> mean_auc;
    std::optional<double> std_auc;
};

namespace detail {

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::string scene_signature(const SceneSource& s) {
    if (s.synthetic) {
        const SceneConfig& c = s.config;
        char buf[256];
        std::snprintf(buf, sizeof(buf), "synth|%llu|%dx%d|%dx%d|%d|%.9g|%.9g|%.9g|%.9g|%d|%.9g",
                      static_cast<unsigned long long>(c.seed), c.frame_width, c.frame_height,
                      c.target_width, c.target_height, static_cast<int>(c.trajectory),
                      c.speed_x, c.speed_y, c.amplitude, c.period, c.frame_count,
                      c.texture_contrast);
        return buf;
    }
    std::string sig = "dir|" + s.frame_dir.string() + "|";
    for (const auto& f : list_frame_files(s.frame_dir)) {
        sig += f.filename().string();
        sig += ':';
        sig += std::to_string(std::filesystem::file_size(f));
        sig += ';';
    }
    std::ifstream in(s.annotation_file, std::ios::binary);
    sig.append(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return sig;
}

inline std::string tracker_signature(const TrackerConfig& t) {
    char buf[256];
    if (t.kind == "ncc") {
        std::snprintf(buf, sizeof(buf), "ncc|%.9g", t.ncc.region_scale);
    } else {
        const MosseParams& m = t.mosse;
        std::snprintf(buf, sizeof(buf), "mosse|%.9g|%.9g|%.9g|%.9g|%.9g|%.9g|%d|%d",
                      m.region_scale, m.lambda, m.eta, m.sigma_divisor, m.psr_mu, m.psr_scale,
                      m.psr_exclusion, m.max_window);
    }
    return buf;
}

inline std::string scheme_signature(Scheme scheme, const DeblurSpec& d, const AssessorSpec& a,
                                    double theta) {
    if (scheme == Scheme::kRaw) return "raw";
    char buf[128];
    std::string sig = to_string(scheme) + "|deblur:";
    switch (d.mode) {
        case DeblurSpec::Mode::kNone: sig += "none"; break;
        case DeblurSpec::Mode::kWiener:
            std::snprintf(buf, sizeof(buf), "wiener(%d,%.9g,%.9g)", d.psf_length, d.psf_angle,
                          d.k);
            sig += buf;
            break;
        case DeblurSpec::Mode::kBlind:
            std::snprintf(buf, sizeof(buf), "blind(%.9g)", d.k);
            sig += buf;
            break;
        case DeblurSpec::Mode::kExternal: sig += "external:" + d.command_template; break;
    }
    if (d.full_frame) sig += "|fullframe";
    if (scheme == Scheme::kSelective) {
        sig += a.external ? "|assessor:external:" + a.command_template : "|assessor:laplacian";
        std::snprintf(buf, sizeof(buf), "|theta:%.9g", theta);
        sig += buf;
    }
    return sig;
}

inline std::string tracker_label(const TrackerConfig& t, Scheme scheme) {
    switch (scheme) {
        case Scheme::kRaw: return t.kind;
        case Scheme::kFullDeblur: return t.kind + "_full";
        case Scheme::kSelective: return t.kind + "_slt";
        case Scheme::kOracle: return t.kind + "_oracle";
    }
    return t.kind;
}

inline nlohmann::json frame_result_to_json(const FrameResult& r) {
    nlohmann::json j;
    j["frame"] = r.frame;
    j["box"] = {r.box.x, r.box.y, r.box.w, r.box.h};
    j["confidence"] = r.confidence;
    j["iou"] = r.iou;
    j["center_error"] = r.center_err;
    j["selected"] = r.selected;
    j["evidence"] = r.evidence;
    j["posterior_deblur"] = r.posterior_deblur;
    j["ok"] = r.ok;
    if (!r.ok) j["error"] = r.error;
    return j;
}

inline FrameResult frame_result_from_json(const nlohmann::json& j) {
    FrameResult r;
    r.frame = j.at("frame").get<size_t>();
    const auto& b = j.at("box");
    r.box = {b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(),
             b.at(3).get<double>()};
    r.confidence = j.at("confidence").get<double>();
    r.iou = j.at("iou").get<double>();
    r.center_err = j.at("center_error").get<double>();
    r.selected = j.at("selected").get<int>();
    r.evidence = j.at("evidence").get<double>();
    r.posterior_deblur = j.at("posterior_deblur").get<double>();
    r.ok = j.at("ok").get<bool>();
    if (!r.ok) r.error = j.value("error", "");
    return r;
}

inline void save_cell(const std::filesystem::path& path, const CellResult& cell) {
    nlohmann::json j;
    j["scene"] = cell.scene_id;
    j["level"] = cell.level;
    j["tracker"] = cell.tracker;
    j["scheme"] = to_string(cell.scheme);
    j["hash"] = cell.hash;
    j["failed"] = cell.failed;
    if (cell.failed) j["error"] = cell.error;
    auto& frames = j["frames"] = nlohmann::json::array();
    for (const auto& r : cell.frames) frames.push_back(frame_result_to_json(r));
    // write-then-rename keeps concurrent writers from exposing partial files
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp" +
                                           std::to_string(::getpid()));
    {
        std::ofstream out(tmp);
        out << j.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

inline std::optional<CellResult> load_cell(const std::filesystem::path& path,
                                           const std::string& expected_hash) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    std::ifstream in(path);
    nlohmann::json j;
    try {
        in >> j;
        if (j.at("hash").get<std::string>() != expected_hash) return std::nullopt;
        CellResult cell;
        cell.scene_id = j.at("scene").get<std::string>();
        cell.level = j.at("level").get<int>();
        cell.tracker = j.at("tracker").get<std::string>();
        cell.scheme = scheme_from_string(j.at("scheme").get<std::string>());
        cell.hash = expected_hash;
        cell.failed = j.at("failed").get<bool>();
        if (cell.failed) cell.error = j.value("error", "");
        for (const auto& fj : j.at("frames")) cell.frames.push_back(frame_result_from_json(fj));
        return cell;
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable cache entries are recomputed
    }
}

}  // namespace detail

inline Sequence load_scene_source(const SceneSource& src) {
    if (src.synthetic) return generate_scene(src.config);
    return load_sequence(src.frame_dir, src.annotation_file);
}

// ---------------------------------------------------------------------------
// theta calibration

/// Midpoint between the mean blur evidence on lightly blurred levels {1, 2}
/// and on heavily blurred levels {8, 16}, over ground-truth search regions of
/// the given benchmark sets.
inline double calibrate_theta(const std::vector<const BenchmarkSet*>& sets,
                              const Deblurrer& deblurrer, const Assessor& assessor,
                              double region_scale = kDefaultRegionScale) {
    double light_sum = 0.0, heavy_sum = 0.0;
    size_t light_n = 0, heavy_n = 0;
    for (const BenchmarkSet* set : sets) {
        for (int level : {1, 2, 8, 16}) {
            const auto it = set->levels.find(level);
            if (it == set->levels.end())
                throw std::invalid_argument("calibrate_theta: benchmark missing level " +
                                            std::to_string(level));
            const Sequence& seq = it->second;
            for (size_t t = 1; t < seq.size(); ++t) {
                const Frame region =
                    crop_region(seq.frames[t], seq.annotations[t], region_scale).first;
                const double ev =
                    blur_evidence(region, deblurrer(region), assessor).evidence;
                if (level <= 2) {
                    light_sum += ev;
                    ++light_n;
                } else {
                    heavy_sum += ev;
                    ++heavy_n;
                }
            }
        }
    }
    if (light_n == 0 || heavy_n == 0)
        throw std::invalid_argument("calibrate_theta: no frames to calibrate on");
    return 0.5 * (light_sum / static_cast<double>(light_n) +
                  heavy_sum / static_cast<double>(heavy_n));
}

// ---------------------------------------------------------------------------
// plan execution

namespace detail {

template <class TrackerT>
std::vector<FrameResult> run_scheme(const TrackerT& tracker, Scheme scheme, const Sequence& seq,
                                    const DeblurSpec& dspec, const AssessorSpec& aspec,
                                    double theta) {
    switch (scheme) {
        case Scheme::kRaw: return track_video_raw(tracker, seq);
        case Scheme::kFullDeblur:
            return track_video_full_deblur(tracker, make_deblurrer(dspec), seq,
                                           dspec.full_frame);
        case Scheme::kOracle: return oracle_selective(tracker, make_deblurrer(dspec), seq);
        case Scheme::kSelective: {
            SchemeConfig cfg;
            cfg.theta = theta;
            return track_video_selective(tracker, make_deblurrer(dspec), make_assessor(aspec),
                                         seq, cfg);
        }
    }
    throw std::logic_error("unreachable");
}

inline std::vector<FrameResult> run_cell_frames(const TrackerConfig& tracker, Scheme scheme,
                                                const Sequence& seq, const DeblurSpec& dspec,
                                                const AssessorSpec& aspec, double theta) {
    if (tracker.kind == "ncc")
        return run_scheme(NccTracker(tracker.ncc), scheme, seq, dspec, aspec, theta);
    if (tracker.kind == "mosse")
        return run_scheme(MosseTracker(tracker.mosse), scheme, seq, dspec, aspec, theta);
    throw std::invalid_argument("unknown tracker kind: " + tracker.kind);
}

}  // namespace detail

inline int resolve_worker_count(int requested) {
    if (const char* env = std::getenv("BLURBENCH_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return std::max(1, requested);
}

/// Runs every cell of the plan. Completed cells (same content hash) are
/// loaded from disk instead of recomputed; per-cell failures are recorded and
/// the run continues.
inline ResultStore run_plan(const ExperimentPlan& plan,
                            std::ostream* progress = nullptr) {
    if (plan.scenes.empty() || plan.levels.empty() || plan.trackers.empty() ||
        plan.schemes.empty())
        throw std::invalid_argument("run_plan: plan needs scenes, levels, trackers, schemes");
    std::filesystem::create_directories(plan.out_dir / "cells");

    const bool needs_theta =
        plan.theta < 0.0 &&
        std::find(plan.schemes.begin(), plan.schemes.end(), Scheme::kSelective) !=
            plan.schemes.end();

    // benchmark cache, built on demand, one build per scene
    std::vector<std::shared_ptr<BenchmarkSet>> benchmarks(plan.scenes.size());
    std::vector<std::unique_ptr<std::once_flag>> built;
    for (size_t i = 0; i < plan.scenes.size(); ++i)
        built.push_back(std::make_unique<std::once_flag>());
    const auto benchmark_of = [&](size_t scene_idx) -> const BenchmarkSet& {
        std::call_once(*built[scene_idx], [&] {
            benchmarks[scene_idx] = std::make_shared<BenchmarkSet>(build_benchmark(
                load_scene_source(plan.scenes[scene_idx]), plan.scenes[scene_idx].id));
        });
        return *benchmarks[scene_idx];
    };

    // resolve theta before cells run (calibration needs the benchmarks)
    double theta = plan.theta;
    if (needs_theta) {
        std::vector<const BenchmarkSet*> sets;
        sets.reserve(plan.scenes.size());
        for (size_t i = 0; i < plan.scenes.size(); ++i) sets.push_back(&benchmark_of(i));
        theta = calibrate_theta(sets, make_deblurrer(plan.deblur),
                                make_assessor(plan.assessor));
        if (progress) *progress << "calibrated theta = " << theta << "\n";
    }

    struct CellTask {
        size_t scene_idx;
        int level;
        size_t tracker_idx;
        Scheme scheme;
    };
    std::vector<CellTask> tasks;
    for (size_t s = 0; s < plan.scenes.size(); ++s)
        for (int level : plan.levels)
            for (size_t t = 0; t < plan.trackers.size(); ++t)
                for (Scheme scheme : plan.schemes) tasks.push_back({s, level, t, scheme});

    ResultStore store;
    store.cells.resize(tasks.size());
    std::mutex progress_mutex;

    const auto run_task = [&](size_t task_idx) {
        const CellTask& task = tasks[task_idx];
        const SceneSource& scene = plan.scenes[task.scene_idx];
        const TrackerConfig& tracker = plan.trackers[task.tracker_idx];

        CellResult cell;
        cell.scene_id = scene.id;
        cell.level = task.level;
        cell.tracker = detail::tracker_label(tracker, task.scheme);
        cell.scheme = task.scheme;
        cell.hash = detail::hex64(detail::fnv1a64(
            detail::scene_signature(scene) + "#" + std::to_string(task.level) + "#" +
            detail::tracker_signature(tracker) + "#" +
            detail::scheme_signature(task.scheme, plan.deblur, plan.assessor, theta)));

        const auto cell_path = plan.out_dir / "cells" / (cell.hash + ".json");
        if (auto cached = detail::load_cell(cell_path, cell.hash)) {
            store.cells[task_idx] = std::move(*cached);
            return;
        }
        try {
            const BenchmarkSet& set = benchmark_of(task.scene_idx);
            const auto it = set.levels.find(task.level);
            if (it == set.levels.end())
                throw std::invalid_argument("benchmark has no level " +
                                            std::to_string(task.level));
            cell.frames = detail::run_cell_frames(tracker, task.scheme, it->second,
                                                  plan.deblur, plan.assessor, theta);
            if (!cell.frames.empty() && !cell.frames.back().ok) {
                cell.failed = true;
                cell.error = cell.frames.back().error;
            }
        } catch (const std::exception& e) {
            cell.failed = true;
            cell.error = e.what();
        }
        detail::save_cell(cell_path, cell);
        if (progress) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            *progress << cell.scene_id << " L" << cell.level << " " << cell.tracker
                      << (cell.failed ? " FAILED: " + cell.error : "") << "\n";
        }
        store.cells[task_idx] = std::move(cell);
    };

    const int workers = resolve_worker_count(plan.workers);
    if (workers <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        // scene-major task order plus a striding counter keeps workers on
        // distinct scenes most of the time
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                    run_task(i);
            });
        for (auto& t : pool) t.join();
    }
    return store;
}

// ---------------------------------------------------------------------------
// summaries

/// Per-frame IoUs pooled across scenes (scene-major order) for one tracker
/// label, keyed by level. Only cells present and unfailed contribute.
inline std::map<std::string, std::map<int, std::vector<double>>> pooled_ious(
    const ResultStore& store) {
    std::map<std::string, std::map<int, std::vector<double>>> pooled;
    for (const CellResult& cell : store.cells) {
        if (cell.failed) continue;
        auto& dst = pooled[cell.tracker][cell.level];
        for (const FrameResult& r : cell.frames) dst.push_back(r.iou);
    }
    return pooled;
}

/// Summary rows in deterministic (tracker label, level) order.
inline std::vector<SummaryRow> summarize(const ResultStore& store) {
    std::vector<SummaryRow> rows;
    for (const auto& [tracker, by_level] : pooled_ious(store)) {
        std::map<int, double> auc_by_level;
        for (const auto& [level, ious] : by_level)
            if (!ious.empty()) auc_by_level[level] = auc_of(ious);

        std::optional<double> nrs, mean_auc, std_auc;
        bool all_levels = true;
        for (int level : kBlurLevels)
            all_levels = all_levels && auc_by_level.count(level) > 0;
        if (all_levels) {
            const RobustnessProfile profile = robustness_profile(auc_by_level);
            mean_auc = profile.mean_auc;
            std_auc = profile.std_auc;
            const auto i_succ = success_frames(by_level.at(1));
            if (!i_succ.empty() && !by_level.at(1).empty()) {
                bool aligned = true;
                for (int level : kBlurLevels)
                    aligned = aligned && by_level.at(level).size() == by_level.at(1).size();
                if (aligned) {
                    try {
                        nrs = nrc(by_level, i_succ).nrs;
                    } catch (const std::exception&) {
                        // u1 = 0; leave nrs unset
                    }
                }
            }
        }
        for (const auto& [level, auc_value] : auc_by_level) {
            SummaryRow row;
            row.tracker = tracker;
            row.level = level;
            row.auc = auc_value;
            row.gain = auc_by_level.count(1) ? auc_value - auc_by_level.at(1) : 0.0;
            row.nrs = nrs;
            row.mean_auc = mean_auc;
            row.std_auc = std_auc;
            rows.push_back(row);
        }
    }
    return rows;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace detail

/// summary.csv: {tracker, level, auc, nrs, mean_auc, std_auc}.
inline void write_summary_csv(const std::vector<SummaryRow>& rows,
                              const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "tracker,level,auc,nrs,mean_auc,std_auc\n";
    for (const SummaryRow& r : rows) {
        out << r.tracker << ',' << r.level << ',' << detail::format_double(r.auc) << ','
            << (r.nrs ? detail::format_double(*r.nrs) : "") << ','
            << (r.mean_auc ? detail::format_double(*r.mean_auc) : "") << ','
            << (r.std_auc ? detail::format_double(*r.std_auc) : "") << '\n';
    }
}

/// gains.csv: AUC gain of each blurred level over level 1.
inline void write_gains_csv(const std::vector<SummaryRow>& rows,
                            const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "tracker,level,gain\n";
    for (const SummaryRow& r : rows) {
        if (r.level == 1) continue;
        out << r.tracker << ',' << r.level << ',' << detail::format_double(r.gain) << '\n';
    }
}

}  // namespace blurbench

#endif  // BLURBENCH_BENCH_HPP_
