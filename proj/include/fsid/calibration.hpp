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

#include <array>
#include <string>
#include <vector>

#include "fsid/image.hpp"

namespace fsid {

/// Burst of frames of a static scene; all frames share geometry and pattern.
struct BurstStack {
    std::vector<BayerImage> frames;
    std::string camera_label;
    std::string gain_label;
};

/// Signal-dependent noise line per channel: Var(x) = k * x + sigma2,
/// intensities normalized to [0,1]. Gr and Gb are pooled into one G profile.
struct ChannelNoise {
    double k = 0;
    double sigma2 = 0;
};

struct NoiseProfile {
    std::array<ChannelNoise, 3> channels;  // indexed by Channel
    std::string camera_label;
    std::string gain_label;
    // Fit diagnostics.
    double r_squared = 0;      // worst channel
    double residual_rms = 0;   // worst channel
    size_t sample_count = 0;
    bool clamped_negative = false;  // a raw fit came back negative and was clamped

    const ChannelNoise& channel(Channel c) const { return channels[static_cast<size_t>(c)]; }
};

struct MeanVariancePoint {
    double mean = 0;
    double variance = 0;
};

/// Per-site temporal mean and unbiased variance (divisor F-1), grouped by
/// Bayer channel. Sites whose mean lies within 2% of the black or white level
/// are excluded to avoid clipping bias. Throws on mismatched geometry or F < 2.
std::array<std::vector<MeanVariancePoint>, 3> mean_variance_samples(const BurstStack& stack);

/// OLS over 64 equal-width intensity bins of the sample cloud. Requires at
/// least 10 bins with >= 100 samples per channel; otherwise throws
/// InsufficientBinsError carrying the occupancy histogram.
struct InsufficientBinsError : std::runtime_error {
    std::array<size_t, 64> occupancy{};
    explicit InsufficientBinsError(std::string msg, std::array<size_t, 64> occ)
        : std::runtime_error(std::move(msg)), occupancy(occ) {}
};

constexpr int kCalibrationBins = 64;
constexpr size_t kMinSamplesPerBin = 100;
constexpr int kMinPopulatedBins = 10;

NoiseProfile fit_noise_profile(const std::array<std::vector<MeanVariancePoint>, 3>& samples);

std::string profile_to_json(const NoiseProfile& profile);
NoiseProfile profile_from_json(const std::string& json_text);

}  // namespace fsid
