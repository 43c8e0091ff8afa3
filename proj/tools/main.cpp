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

// blurbench CLI.
//
//   synth           generate a synthetic high-frame-rate scene
//   blur            build blurred benchmark levels from a source sequence
//   track           run one tracker/scheme over a sequence, JSON results out
//   eval            run a full experiment plan (scenes x levels x trackers
//                   x schemes), resumable and parallel
//   report          emit CSV tables and SVG charts from an eval output
//   calibrate-theta calibrate the selective-scheme evidence threshold

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "blurbench/blurbench.hpp"

namespace {

using namespace blurbench;

SceneConfig scene_config_from_flags(uint64_t seed, const std::string& size,
                                    const std::string& target, const std::string& speed,
                                    const std::string& trajectory, double amplitude,
                                    double period, int frames, double contrast) {
    SceneConfig cfg;
    cfg.seed = seed;
    const auto parse_pair = [](const std::string& s, char sep, double& a, double& b) {
        const size_t pos = s.find(sep);
        if (pos == std::string::npos)
            throw CLI::ValidationError("expected '<a>" + std::string(1, sep) + "<b>', got " + s);
        a = std::stod(s.substr(0, pos));
        b = std::stod(s.substr(pos + 1));
    };
    double w, h;
    parse_pair(size, 'x', w, h);
    cfg.frame_width = static_cast<int>(w);
    cfg.frame_height = static_cast<int>(h);
    parse_pair(target, 'x', w, h);
    cfg.target_width = static_cast<int>(w);
    cfg.target_height = static_cast<int>(h);
    parse_pair(speed, ',', cfg.speed_x, cfg.speed_y);
    if (trajectory == "linear") {
        cfg.trajectory = Trajectory::kLinear;
    } else if (trajectory == "sinusoidal") {
        cfg.trajectory = Trajectory::kSinusoidal;
    } else {
        throw CLI::ValidationError("trajectory must be linear or sinusoidal");
    }
    cfg.amplitude = amplitude;
    cfg.period = period;
    cfg.frame_count = frames;
    cfg.texture_contrast = contrast;
    return cfg;
}

SceneConfig scene_config_from_json(const nlohmann::json& j) {
    SceneConfig cfg;
    cfg.seed = j.value("seed", 1ULL);
    cfg.frame_width = j.value("frame_width", cfg.frame_width);
    cfg.frame_height = j.value("frame_height", cfg.frame_height);
    cfg.target_width = j.value("target_width", cfg.target_width);
    cfg.target_height = j.value("target_height", cfg.target_height);
    const std::string traj = j.value("trajectory", "linear");
    if (traj == "sinusoidal")
        cfg.trajectory = Trajectory::kSinusoidal;
    else if (traj != "linear")
        throw std::invalid_argument("plan: unknown trajectory " + traj);
    cfg.speed_x = j.value("speed_x", cfg.speed_x);
    cfg.speed_y = j.value("speed_y", cfg.speed_y);
    cfg.amplitude = j.value("amplitude", cfg.amplitude);
    cfg.period = j.value("period", cfg.period);
    cfg.frame_count = j.value("frames", cfg.frame_count);
    cfg.texture_contrast = j.value("contrast", cfg.texture_contrast);
    return cfg;
}

ExperimentPlan plan_from_json(const nlohmann::json& j) {
    ExperimentPlan plan;
    plan.out_dir = j.value("out", "results");
    plan.workers = j.value("workers", 1);
    if (j.contains("levels")) plan.levels = j.at("levels").get<std::vector<int>>();
    for (int level : plan.levels)
        if (std::find(kBlurLevels.begin(), kBlurLevels.end(), level) == kBlurLevels.end())
            throw std::invalid_argument("plan: level must be one of 1,2,4,8,16");

    size_t scene_idx = 0;
    for (const auto& sj : j.at("scenes")) {
        SceneSource src;
        if (sj.contains("dir")) {
            src.synthetic = false;
            src.frame_dir = sj.at("dir").get<std::string>();
            src.annotation_file =
                sj.value("annot", (src.frame_dir / "groundtruth.txt").string());
            src.id = sj.value("id", src.frame_dir.filename().string());
        } else {
            src.synthetic = true;
            src.config = scene_config_from_json(sj);
            src.id = sj.value("id", "synth" + std::to_string(src.config.seed));
        }
        if (src.id.empty()) src.id = "scene" + std::to_string(scene_idx);
        plan.scenes.push_back(std::move(src));
        ++scene_idx;
    }

    if (j.contains("trackers")) {
        for (const auto& tj : j.at("trackers")) {
            TrackerConfig t;
            if (tj.is_string()) {
                t.kind = tj.get<std::string>();
            } else {
                t.kind = tj.at("name").get<std::string>();
                t.ncc.region_scale = tj.value("region_scale", t.ncc.region_scale);
                t.mosse.region_scale = tj.value("region_scale", t.mosse.region_scale);
                t.mosse.lambda = tj.value("lambda", t.mosse.lambda);
                t.mosse.eta = tj.value("eta", t.mosse.eta);
                t.mosse.sigma_divisor = tj.value("sigma_divisor", t.mosse.sigma_divisor);
                t.mosse.psr_mu = tj.value("psr_mu", t.mosse.psr_mu);
                t.mosse.psr_scale = tj.value("psr_scale", t.mosse.psr_scale);
            }
            if (t.kind != "ncc" && t.kind != "mosse")
                throw std::invalid_argument("plan: unknown tracker " + t.kind);
            plan.trackers.push_back(std::move(t));
        }
    } else {
        TrackerConfig ncc, mosse;
        ncc.kind = "ncc";
        mosse.kind = "mosse";
        plan.trackers = {ncc, mosse};
    }

    plan.schemes.clear();
    for (const auto& s : j.value("schemes", std::vector<std::string>{"raw"}))
        plan.schemes.push_back(scheme_from_string(s));

    plan.deblur = parse_deblur_spec(j.value("deblur", "blind"));
    plan.deblur.psf_length = j.value("psf_length", plan.deblur.psf_length);
    plan.deblur.psf_angle = j.value("psf_angle", plan.deblur.psf_angle);
    plan.deblur.k = j.value("wiener_k", plan.deblur.k);
    plan.deblur.full_frame = j.value("full_frame_deblur", false);
    plan.assessor = parse_assessor_spec(j.value("assessor", "laplacian"));

    if (j.contains("theta") && j.at("theta").is_number())
        plan.theta = j.at("theta").get<double>();
    else
        plan.theta = -1.0;  // calibrate when a selective scheme is present
    return plan;
}

int cmd_synth(uint64_t seed, const std::string& size, const std::string& target,
              const std::string& speed, const std::string& trajectory, double amplitude,
              double period, int frames, double contrast, const std::string& out,
              const std::string& format) {
    const SceneConfig cfg = scene_config_from_flags(seed, size, target, speed, trajectory,
                                                    amplitude, period, frames, contrast);
    const Sequence seq = generate_scene(cfg);
    save_sequence(out, seq, "." + format);
    std::cout << "wrote " << seq.size() << " frames to " << out << "\n";
    return 0;
}

int cmd_blur(const std::string& src_dir, const std::string& annot, const std::string& levels,
             int stride, const std::string& out) {
    const Sequence src = load_sequence(src_dir, annot, 240.0);
    std::vector<int> level_list;
    {
        std::istringstream ss(levels);
        std::string item;
        while (std::getline(ss, item, ',')) level_list.push_back(std::stoi(item));
    }
    size_t common = SIZE_MAX;
    std::map<int, Sequence> built;
    for (int level : level_list) {
        Sequence s = subsample(synthesize_level(src, level), stride, src.frames.front(),
                               src.annotations.front());
        common = std::min(common, s.size());
        built.emplace(level, std::move(s));
    }
    for (auto& [level, s] : built) {
        s.frames.resize(common);
        s.annotations.resize(common);
        const auto dir = std::filesystem::path(out) / ("L" + std::to_string(level));
        save_sequence(dir, s);
        std::cout << "level " << level << ": " << s.size() << " frames -> " << dir << "\n";
    }
    return 0;
}

int cmd_track(const std::string& tracker_name, const std::string& scheme_name,
              const std::string& deblur, const std::string& assessor, double theta,
              const std::string& seq_dir, const std::string& annot, double region_scale,
              double lambda, double eta, bool full_frame, const std::string& out) {
    const auto annot_path = annot.empty()
                                ? std::filesystem::path(seq_dir) / "groundtruth.txt"
                                : std::filesystem::path(annot);
    const Sequence seq = load_sequence(seq_dir, annot_path);

    DeblurSpec dspec = parse_deblur_spec(deblur);
    dspec.full_frame = full_frame;
    const AssessorSpec aspec = parse_assessor_spec(assessor);
    const Scheme scheme = scheme_from_string(scheme_name);

    TrackerConfig tracker;
    tracker.kind = tracker_name;
    tracker.ncc.region_scale = region_scale;
    tracker.mosse.region_scale = region_scale;
    tracker.mosse.lambda = lambda;
    tracker.mosse.eta = eta;

    std::vector<FrameResult> results;
    if (tracker.kind == "ncc") {
        results = detail::run_scheme(NccTracker(tracker.ncc), scheme, seq, dspec, aspec, theta);
    } else if (tracker.kind == "mosse") {
        results =
            detail::run_scheme(MosseTracker(tracker.mosse), scheme, seq, dspec, aspec, theta);
    } else {
        throw std::invalid_argument("unknown tracker: " + tracker.kind);
    }

    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : results) j.push_back(detail::frame_result_to_json(r));
    if (out.empty()) {
        std::cout << j.dump(1) << "\n";
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << j.dump(1) << "\n";
        std::cout << "wrote " << results.size() << " records to " << out << "\n";
    }
    const bool failed = !results.empty() && !results.back().ok;
    if (failed) std::cerr << "tracking aborted: " << results.back().error << "\n";
    return failed ? 1 : 0;
}

int cmd_eval(const std::string& plan_path, const std::string& out_override, int workers) {
    std::ifstream in(plan_path);
    if (!in) throw std::runtime_error("cannot open plan: " + plan_path);
    nlohmann::json j;
    in >> j;
    ExperimentPlan plan = plan_from_json(j);
    if (!out_override.empty()) plan.out_dir = out_override;
    if (workers > 0) plan.workers = workers;
    const ResultStore store = run_plan(plan, &std::cout);
    const auto rows = summarize(store);
    write_summary_csv(rows, plan.out_dir / "summary.csv");
    write_gains_csv(rows, plan.out_dir / "gains.csv");
    size_t failed = 0;
    for (const auto& c : store.cells) failed += c.failed;
    std::cout << store.cells.size() << " cells (" << failed << " failed), summary at "
              << (plan.out_dir / "summary.csv") << "\n";
    return 0;
}

int cmd_report(const std::string& store_dir, const std::string& out) {
    // rebuild a store from the persisted cells
    ResultStore store;
    const auto cells_dir = std::filesystem::path(store_dir) / "cells";
    if (!std::filesystem::is_directory(cells_dir))
        throw std::runtime_error("no cells directory under " + store_dir);
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(cells_dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::ifstream in(f);
        nlohmann::json j;
        in >> j;
        if (auto cell = detail::load_cell(f, j.at("hash").get<std::string>()))
            store.cells.push_back(std::move(*cell));
    }
    // deterministic order independent of hash file names
    std::sort(store.cells.begin(), store.cells.end(), [](const auto& a, const auto& b) {
        return std::tie(a.scene_id, a.tracker, a.level) < std::tie(b.scene_id, b.tracker, b.level);
    });
    emit_report(store, out);
    std::cout << "report written to " << out << "\n";
    return 0;
}

int cmd_calibrate(int scenes, uint64_t seed0, const std::string& deblur,
                  const std::string& assessor, int frames) {
    std::vector<BenchmarkSet> sets;
    for (int i = 0; i < scenes; ++i) {
        SceneConfig cfg;
        cfg.seed = seed0 + static_cast<uint64_t>(i);
        cfg.frame_count = frames;
        sets.push_back(build_benchmark(generate_scene(cfg), "cal" + std::to_string(i)));
    }
    std::vector<const BenchmarkSet*> ptrs;
    for (const auto& s : sets) ptrs.push_back(&s);
    const double theta = calibrate_theta(ptrs, make_deblurrer(parse_deblur_spec(deblur)),
                                         make_assessor(parse_assessor_spec(assessor)));
    std::cout << theta << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blurbench: motion-blur tracking benchmark toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic scene");
    uint64_t seed = 1;
    std::string size = "320x240", target = "40x40", speed = "1.0,0.25", trajectory = "linear";
    double amplitude = 16.0, period = 48.0, contrast = 0.8;
    int frames = 240;
    std::string out_dir = "scene", format = "png";
    synth->add_option("--seed", seed, "RNG seed");
    synth->add_option("--size", size, "frame size WxH");
    synth->add_option("--target", target, "target size WxH");
    synth->add_option("--speed", speed, "speed X,Y in px/frame");
    synth->add_option("--trajectory", trajectory, "linear|sinusoidal");
    synth->add_option("--amplitude", amplitude, "sinusoidal amplitude, px");
    synth->add_option("--period", period, "sinusoidal period, frames");
    synth->add_option("--frames", frames, "frame count");
    synth->add_option("--contrast", contrast, "texture contrast in [0,1]");
    synth->add_option("--out", out_dir, "output directory")->required();
    synth->add_option("--format", format, "png|pgm");

    // blur
    auto* blur = app.add_subcommand("blur", "build blurred benchmark levels");
    std::string src_dir, annot_file, levels = "1,2,4,8,16";
    int stride = kDefaultSubsampleStride;
    std::string blur_out;
    blur->add_option("--src", src_dir, "source frame directory")->required();
    blur->add_option("--annot", annot_file, "source annotation file")->required();
    blur->add_option("--levels", levels, "comma-separated blur levels");
    blur->add_option("--stride", stride, "temporal subsampling stride");
    blur->add_option("--out", blur_out, "output directory")->required();

    // track
    auto* track = app.add_subcommand("track", "run a tracker over a sequence");
    std::string tracker_name = "mosse", scheme_name = "raw", deblur_spec = "blind",
                assessor_spec = "laplacian", seq_dir, track_annot, track_out;
    double theta = 1.0, region_scale = kDefaultRegionScale, lambda = 1e-2, eta = 0.125;
    bool full_frame = false;
    track->add_option("--tracker", tracker_name, "ncc|mosse");
    track->add_option("--scheme", scheme_name, "raw|full|selective|oracle");
    track->add_option("--deblur", deblur_spec, "wiener|blind|external:<template>|none");
    track->add_option("--assessor", assessor_spec, "laplacian|external:<template>");
    track->add_option("--theta", theta, "selective evidence threshold");
    track->add_option("--seq", seq_dir, "sequence directory")->required();
    track->add_option("--annot", track_annot, "annotation file (default <seq>/groundtruth.txt)");
    track->add_option("--region-scale", region_scale, "search region side scale");
    track->add_option("--lambda", lambda, "MOSSE ridge regularizer");
    track->add_option("--eta", eta, "MOSSE learning rate");
    track->add_flag("--full-frame", full_frame, "full scheme deblurs whole frames");
    track->add_option("--out", track_out, "write JSON results here (default stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "run an experiment plan");
    std::string plan_path, eval_out;
    int workers = 0;
    eval->add_option("--plan", plan_path, "plan JSON file")->required();
    eval->add_option("--out", eval_out, "override plan output directory");
    eval->add_option("--workers", workers, "worker count (BLURBENCH_WORKERS overrides)");

    // report
    auto* report = app.add_subcommand("report", "emit tables and charts");
    std::string store_dir, report_out = "report";
    report->add_option("--store", store_dir, "eval output directory")->required();
    report->add_option("--out", report_out, "report output directory");

    // calibrate-theta
    auto* cal = app.add_subcommand("calibrate-theta", "calibrate the evidence threshold");
    int cal_scenes = 4, cal_frames = 120;
    uint64_t cal_seed = 1;
    std::string cal_deblur = "blind", cal_assessor = "laplacian";
    cal->add_option("--scenes", cal_scenes, "number of synthetic calibration scenes");
    cal->add_option("--seed", cal_seed, "first scene seed");
    cal->add_option("--frames", cal_frames, "frames per calibration scene");
    cal->add_option("--deblur", cal_deblur, "deblur operator");
    cal->add_option("--assessor", cal_assessor, "assessor");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed())
            return cmd_synth(seed, size, target, speed, trajectory, amplitude, period, frames,
                             contrast, out_dir, format);
        if (blur->parsed()) return cmd_blur(src_dir, annot_file, levels, stride, blur_out);
        if (track->parsed())
            return cmd_track(tracker_name, scheme_name, deblur_spec, assessor_spec, theta,
                             seq_dir, track_annot, region_scale, lambda, eta, full_frame,
                             track_out);
        if (eval->parsed()) return cmd_eval(plan_path, eval_out, workers);
        if (report->parsed()) return cmd_report(store_dir, report_out);
        if (cal->parsed())
            return cmd_calibrate(cal_scenes, cal_seed, cal_deblur, cal_assessor, cal_frames);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
