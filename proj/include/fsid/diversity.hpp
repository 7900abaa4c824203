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

#include <string>
#include <vector>

#include "fsid/image.hpp"

namespace fsid {

struct DiversityReport {
    std::vector<double> edge_ratios;  // per image, in [0,1]
    double mean_edge_ratio = 0;
    double stddev_edge_ratio = 0;
    std::vector<double> color_entropies;  // bits, in [0,9]
    double band_low = 0;
    double band_high = 0;
    double threshold = 0;
    bool accepted = false;
};

/// Fraction of pixels whose Sobel gradient magnitude on Rec.709 luma exceeds
/// threshold. 3x3 kernels, reflect-padded borders.
double edge_ratio(const RgbImage& img, double threshold);

/// Shannon entropy in bits of the joint 8x8x8 RGB histogram (512 bins).
double color_entropy(const RgbImage& img);

/// accepted = batch mean edge ratio inside [band_low, band_high].
/// Throws std::invalid_argument on an empty batch or an inverted band.
DiversityReport validate_batch(const std::vector<RgbImage>& images, double band_low,
                               double band_high, double threshold);

std::string report_to_json(const DiversityReport& report);

}  // namespace fsid
