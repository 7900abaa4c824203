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

#include "fsid/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsid {

double sample_gain_scale(Rng& rng, double s_min, double s_max) {
    if (!(s_min > 0) || s_min > s_max)
        throw std::invalid_argument("sample_gain_scale: need 0 < s_min <= s_max");
    return rng.log_uniform(s_min, s_max);
}

BayerImage inject(const BayerImage& clean, const InjectionConfig& cfg, Rng rng,
                  double* gain_scale_out) {
    for (const auto& ch : cfg.profile.channels)
        if (ch.k < 0 || ch.sigma2 < 0)
            throw std::invalid_argument("inject: negative modeled variance");

    Rng gain_rng = rng.derive("gain");
    const double s = sample_gain_scale(gain_rng, cfg.gain_scale_min, cfg.gain_scale_max);
    if (gain_scale_out) *gain_scale_out = s;

    BayerImage noisy(clean.width, clean.height, clean.pattern);
    for (int r = 0; r < clean.height; r++) {
        Rng row_rng = rng.derive("row", static_cast<uint64_t>(r));
        // Channel alternates within a row; look both up once.
        const ChannelNoise even = cfg.profile.channel(cfa_channel(clean.pattern, r, 0));
        const ChannelNoise odd = cfg.profile.channel(cfa_channel(clean.pattern, r, 1));
        for (int c = 0; c < clean.width; c++) {
            const ChannelNoise& cn = (c % 2 == 0) ? even : odd;
            const double x = clean.at(r, c);
            const double variance = s * (cn.k * x + cn.sigma2);
            const double eps = variance > 0 ? std::sqrt(variance) * row_rng.next_normal() : 0.0;
            noisy.at(r, c) = static_cast<float>(std::clamp(x + eps, 0.0, 1.0));
        }
    }
    return noisy;
}

}  // namespace fsid
