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

#include <span>
#include <string>
#include <vector>

#include "fsid/image.hpp"

namespace fsid {

/// 10*log10(peak^2 / MSE) over all samples; +infinity for identical inputs.
/// Throws std::invalid_argument on geometry mismatch or peak <= 0.
double psnr(std::span<const float> a, std::span<const float> b, double peak = 1.0);
double psnr(const BayerImage& a, const BayerImage& b, double peak = 1.0);
double psnr(const RgbImage& a, const RgbImage& b, double peak = 1.0);

struct SsimParams {
    bool gaussian_window = true;  // 11x11 Gaussian sigma=1.5; false = 8x8 blocks
    double k1 = 0.01;
    double k2 = 0.03;
    double peak = 1.0;
};

/// Mean SSIM over a single plane. Gaussian variant averages over all windows
/// fully inside the frame; block variant averages 8x8 non-overlapping blocks.
/// Throws when the plane is smaller than the window.
double ssim_plane(std::span<const float> a, std::span<const float> b, int width, int height,
                  const SsimParams& params = {});
double ssim(const BayerImage& a, const BayerImage& b, const SsimParams& params = {});
/// RGB mode: mean of per-channel SSIM.
double ssim(const RgbImage& a, const RgbImage& b, const SsimParams& params = {});

struct EvalRecord {
    std::string pair_id;
    std::string label;   // material/content tag
    double lux = 0;
    double psnr_db = 0;  // +inf allowed
    double ssim_score = 0;
};

struct EvalGroup {
    double lux = 0;
    std::string label;  // empty for per-lux aggregate rows
    size_t count = 0;
    double mean_psnr = 0;
    double mean_ssim = 0;
};

struct EvalTable {
    std::vector<EvalGroup> by_lux;        // sorted ascending by lux
    std::vector<EvalGroup> by_lux_label;  // sorted by (lux, label)
};

/// Groups records into per-lux aggregates plus per-(lux,label) breakdown.
EvalTable evaluate_set(const std::vector<EvalRecord>& records);

/// CSV: one row per lux with mean PSNR/SSIM columns, then the label breakdown.
std::string eval_table_to_csv(const EvalTable& table);

}  // namespace fsid
