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

// Umbrella header.

#ifndef BLURBENCH_BLURBENCH_HPP_
#define BLURBENCH_BLURBENCH_HPP_

#include "blurbench/assessor.hpp"
#include "blurbench/bench.hpp"
#include "blurbench/blur.hpp"
#include "blurbench/core.hpp"
#include "blurbench/deblur.hpp"
#include "blurbench/fft.hpp"
#include "blurbench/io.hpp"
#include "blurbench/metrics.hpp"
#include "blurbench/mosse.hpp"
#include "blurbench/ncc.hpp"
#include "blurbench/report.hpp"
#include "blurbench/scene.hpp"
#include "blurbench/select.hpp"
#include "blurbench/tracker.hpp"

#endif  // BLURBENCH_BLURBENCH_HPP_
