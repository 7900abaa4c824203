// Copyright (c) 2026 the fsidgen authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "fsid/calibration.hpp"
#include "fsid/image.hpp"
#include "fsid/rng.hpp"

namespace fsid {

struct InjectionConfig {
    NoiseProfile profile;
    double gain_scale_min = 0.25;  // multiplies both k and sigma2
    double gain_scale_max = 4.0;
};

/// Log-uniform draw in [s_min, s_max]; throws on a bad range.
double sample_gain_scale(Rng& rng, double s_min, double s_max);

/// Per pixel: noisy = clamp(x + eps), eps ~ Normal(0, s * (k_c x + sigma2_c)),
/// s drawn once for the whole image. Per-row RNG sub-streams keep the result
/// bit-reproducible regardless of traversal order.
BayerImage inject(const BayerImage& clean, const InjectionConfig& cfg, Rng rng,
                  double* gain_scale_out = nullptr);

}  // namespace fsid
