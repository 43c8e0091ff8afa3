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

#include <catch2/catch_amalgamated.hpp>

#include "blurbench/scene.hpp"
#include "testutil.hpp"

using namespace blurbench;

TEST_CASE("generate_scene determinism and trajectory") {
    SceneConfig cfg;
    cfg.seed = 42;
    cfg.frame_count = 24;
    cfg.frame_width = 120;
    cfg.frame_height = 90;
    cfg.target_width = 20;
    cfg.target_height = 20;

    SECTION("same seed twice gives bit-identical sequences") {
        const Sequence a = generate_scene(cfg);
        const Sequence b = generate_scene(cfg);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) CHECK(a.frames[i].pixels == b.frames[i].pixels);
    }

    SECTION("zero speed keeps annotations fixed") {
        cfg.speed_x = 0.0;
        cfg.speed_y = 0.0;
        const Sequence seq = generate_scene(cfg);
        for (const auto& b : seq.annotations) CHECK(b == seq.annotations.front());
    }

    SECTION("linear speed gives an arithmetic annotation sequence") {
        cfg.speed_x = 2.0;
        cfg.speed_y = 0.0;
        const Sequence seq = generate_scene(cfg);
        for (size_t t = 1; t < seq.size(); ++t) {
            CHECK(seq.annotations[t].x - seq.annotations[t - 1].x == Catch::Approx(2.0));
            CHECK(seq.annotations[t].y == Catch::Approx(seq.annotations[0].y));
        }
    }

    SECTION("trajectory that cannot fit is rejected") {
        cfg.speed_x = 50.0;
        CHECK_THROWS_WITH(generate_scene(cfg),
                          Catch::Matchers::ContainsSubstring("trajectory exits frame bounds"));
    }

    SECTION("frame_count below 17 is rejected") {
        cfg.frame_count = 16;
        CHECK_THROWS_AS(generate_scene(cfg), std::invalid_argument);
    }

    SECTION("textures have content when contrast is positive") {
        cfg.texture_contrast = 0.8;
        const Sequence seq = generate_scene(cfg);
        const Frame& f = seq.frames[0];
        const BoundingBox& b = seq.annotations[0];
        const auto variance_of = [&](int x0, int y0, int x1, int y1) {
            double s = 0, s2 = 0;
            int n = 0;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) {
                    s += f.at(x, y);
                    s2 += f.at(x, y) * f.at(x, y);
                    ++n;
                }
            return s2 / n - (s / n) * (s / n);
        };
        const double target_var =
            variance_of(static_cast<int>(b.x) + 2, static_cast<int>(b.y) + 2,
                        static_cast<int>(b.x + b.w) - 2, static_cast<int>(b.y + b.h) - 2);
        const double bg_var = variance_of(0, 0, 12, 12);  // far corner, off the trajectory
        CHECK(target_var > 1.0);
        CHECK(bg_var > 1.0);
    }

    SECTION("sinusoidal trajectory oscillates vertically") {
        cfg.trajectory = Trajectory::kSinusoidal;
        cfg.speed_x = 1.0;
        cfg.speed_y = 0.0;
        cfg.amplitude = 10.0;
        cfg.period = 12.0;
        const Sequence seq = generate_scene(cfg);
        double y_min = 1e9, y_max = -1e9;
        for (const auto& b : seq.annotations) {
            y_min = std::min(y_min, b.y);
            y_max = std::max(y_max, b.y);
        }
        CHECK(y_max - y_min == Catch::Approx(20.0).margin(0.5));
    }
}
