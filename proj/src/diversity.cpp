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

#include "fsid/diversity.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsid {

namespace {

// Reflect-101 style border: -1 -> 1, h -> h-2 (degenerates gracefully for 1px).
inline int reflect(int i, int n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * n - 2 - i;
    return std::clamp(i, 0, n - 1);
}

std::vector<float> luma_plane(const RgbImage& img) {
    std::vector<float> luma(img.pixel_count());
    for (size_t i = 0; i < luma.size(); i++) {
        luma[i] = 0.2126f * img.data[i * 3] + 0.7152f * img.data[i * 3 + 1] +
                  0.0722f * img.data[i * 3 + 2];
    }
    return luma;
}

}  // namespace

double edge_ratio(const RgbImage& img, double threshold) {
    if (threshold <= 0) throw std::invalid_argument("edge_ratio: threshold must be positive");
    const auto luma = luma_plane(img);
    const int w = img.width, h = img.height;
    auto at = [&](int r, int c) { return luma[static_cast<size_t>(reflect(r, h)) * w + reflect(c, w)]; };

    size_t count = 0;
    for (int r = 0; r < h; r++) {
        for (int c = 0; c < w; c++) {
            const float gx = (at(r - 1, c + 1) + 2 * at(r, c + 1) + at(r + 1, c + 1)) -
                             (at(r - 1, c - 1) + 2 * at(r, c - 1) + at(r + 1, c - 1));
            const float gy = (at(r + 1, c - 1) + 2 * at(r + 1, c) + at(r + 1, c + 1)) -
                             (at(r - 1, c - 1) + 2 * at(r - 1, c) + at(r - 1, c + 1));
            if (std::sqrt(double(gx) * gx + double(gy) * gy) > threshold) count++;
        }
    }
    return static_cast<double>(count) / static_cast<double>(img.pixel_count());
}

double color_entropy(const RgbImage& img) {
    std::array<uint64_t, 512> bins{};
    for (size_t i = 0; i < img.pixel_count(); i++) {
        int idx = 0;
        for (int ch = 0; ch < 3; ch++) {
            const int b = std::min(7, static_cast<int>(img.data[i * 3 + ch] * 8.0f));
            idx = idx * 8 + std::max(0, b);
        }
        bins[idx]++;
    }
    const double total = static_cast<double>(img.pixel_count());
    double entropy = 0;
    for (uint64_t n : bins) {
        if (n == 0) continue;
        const double p = static_cast<double>(n) / total;
        entropy -= p * std::log2(p);
    }
    return entropy;
}

DiversityReport validate_batch(const std::vector<RgbImage>& images, double band_low,
                               double band_high, double threshold) {
    if (images.empty()) throw std::invalid_argument("validate_batch: empty batch");
    if (!(band_low < band_high)) throw std::invalid_argument("validate_batch: inverted band");

    DiversityReport report;
    report.band_low = band_low;
    report.band_high = band_high;
    report.threshold = threshold;
    double sum = 0, sumsq = 0;
    for (const auto& img : images) {
        const double r = edge_ratio(img, threshold);
        report.edge_ratios.push_back(r);
        report.color_entropies.push_back(color_entropy(img));
        sum += r;
        sumsq += r * r;
    }
    const double n = static_cast<double>(images.size());
    report.mean_edge_ratio = sum / n;
    report.stddev_edge_ratio = std::sqrt(std::max(0.0, sumsq / n - (sum / n) * (sum / n)));
    report.accepted = report.mean_edge_ratio >= band_low && report.mean_edge_ratio <= band_high;
    return report;
}

std::string report_to_json(const DiversityReport& r) {
    nlohmann::json j = {{"schema", "fsidgen-diversity-1"},
                        {"edge_ratios", r.edge_ratios},
                        {"mean_edge_ratio", r.mean_edge_ratio},
                        {"stddev_edge_ratio", r.stddev_edge_ratio},
                        {"color_entropies", r.color_entropies},
                        {"band", {r.band_low, r.band_high}},
                        {"threshold", r.threshold},
                        {"accepted", r.accepted}};
    return j.dump(2);
}

}  // namespace fsid
