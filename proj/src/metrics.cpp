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

#include "fsid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fsid {

double psnr(std::span<const float> a, std::span<const float> b, double peak) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("psnr: geometry mismatch");
    if (peak <= 0) throw std::invalid_argument("psnr: peak must be positive");
    double mse = 0;
    for (size_t i = 0; i < a.size(); i++) {
        const double d = double(a[i]) - b[i];
        mse += d * d;
    }
    mse /= static_cast<double>(a.size());
    if (mse == 0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / mse);
}

double psnr(const BayerImage& a, const BayerImage& b, double peak) {
    if (a.width != b.width || a.height != b.height || a.pattern != b.pattern)
        throw std::invalid_argument("psnr: geometry/pattern mismatch");
    return psnr(std::span<const float>(a.data), std::span<const float>(b.data), peak);
}

double psnr(const RgbImage& a, const RgbImage& b, double peak) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("psnr: geometry mismatch");
    return psnr(std::span<const float>(a.data), std::span<const float>(b.data), peak);
}

namespace {

constexpr int kGaussWindow = 11;
constexpr double kGaussSigma = 1.5;
constexpr int kBlockWindow = 8;

std::array<double, kGaussWindow * kGaussWindow> gaussian_kernel() {
    std::array<double, kGaussWindow * kGaussWindow> k{};
    double sum = 0;
    const int half = kGaussWindow / 2;
    for (int y = -half; y <= half; y++)
        for (int x = -half; x <= half; x++) {
            const double v = std::exp(-(x * x + y * y) / (2.0 * kGaussSigma * kGaussSigma));
            k[(y + half) * kGaussWindow + (x + half)] = v;
            sum += v;
        }
    for (double& v : k) v /= sum;
    return k;
}

double window_ssim(double mu_a, double mu_b, double var_a, double var_b, double cov,
                   const SsimParams& p) {
    const double c1 = (p.k1 * p.peak) * (p.k1 * p.peak);
    const double c2 = (p.k2 * p.peak) * (p.k2 * p.peak);
    return ((2 * mu_a * mu_b + c1) * (2 * cov + c2)) /
           ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
}

}  // namespace

double ssim_plane(std::span<const float> a, std::span<const float> b, int width, int height,
                  const SsimParams& p) {
    if (a.size() != b.size() || a.size() != static_cast<size_t>(width) * height)
        throw std::invalid_argument("ssim: geometry mismatch");
    const int win = p.gaussian_window ? kGaussWindow : kBlockWindow;
    if (width < win || height < win)
        throw std::invalid_argument("ssim: image smaller than window");

    double total = 0;
    size_t windows = 0;

    if (p.gaussian_window) {
        static const auto kernel = gaussian_kernel();
        for (int r = 0; r + kGaussWindow <= height; r++) {
            for (int c = 0; c + kGaussWindow <= width; c++) {
                double mu_a = 0, mu_b = 0, saa = 0, sbb = 0, sab = 0;
                for (int y = 0; y < kGaussWindow; y++)
                    for (int x = 0; x < kGaussWindow; x++) {
                        const double w = kernel[y * kGaussWindow + x];
                        const double va = a[static_cast<size_t>(r + y) * width + c + x];
                        const double vb = b[static_cast<size_t>(r + y) * width + c + x];
                        mu_a += w * va;
                        mu_b += w * vb;
                        saa += w * va * va;
                        sbb += w * vb * vb;
                        sab += w * va * vb;
                    }
                total += window_ssim(mu_a, mu_b, saa - mu_a * mu_a, sbb - mu_b * mu_b,
                                     sab - mu_a * mu_b, p);
                windows++;
            }
        }
    } else {
        for (int r = 0; r + kBlockWindow <= height; r += kBlockWindow) {
            for (int c = 0; c + kBlockWindow <= width; c += kBlockWindow) {
                double mu_a = 0, mu_b = 0, saa = 0, sbb = 0, sab = 0;
                constexpr double w = 1.0 / (kBlockWindow * kBlockWindow);
                for (int y = 0; y < kBlockWindow; y++)
                    for (int x = 0; x < kBlockWindow; x++) {
                        const double va = a[static_cast<size_t>(r + y) * width + c + x];
                        const double vb = b[static_cast<size_t>(r + y) * width + c + x];
                        mu_a += w * va;
                        mu_b += w * vb;
                        saa += w * va * va;
                        sbb += w * vb * vb;
                        sab += w * va * vb;
                    }
                total += window_ssim(mu_a, mu_b, saa - mu_a * mu_a, sbb - mu_b * mu_b,
                                     sab - mu_a * mu_b, p);
                windows++;
            }
        }
    }
    return total / static_cast<double>(windows);
}

double ssim(const BayerImage& a, const BayerImage& b, const SsimParams& p) {
    if (a.width != b.width || a.height != b.height || a.pattern != b.pattern)
        throw std::invalid_argument("ssim: geometry/pattern mismatch");
    return ssim_plane(a.data, b.data, a.width, a.height, p);
}

double ssim(const RgbImage& a, const RgbImage& b, const SsimParams& p) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("ssim: geometry mismatch");
    double total = 0;
    std::vector<float> pa(a.pixel_count()), pb(b.pixel_count());
    for (int ch = 0; ch < 3; ch++) {
        for (size_t i = 0; i < a.pixel_count(); i++) {
            pa[i] = a.data[i * 3 + ch];
            pb[i] = b.data[i * 3 + ch];
        }
        total += ssim_plane(pa, pb, a.width, a.height, p);
    }
    return total / 3.0;
}

EvalTable evaluate_set(const std::vector<EvalRecord>& records) {
    if (records.empty()) throw std::invalid_argument("evaluate_set: no records");
    std::map<double, std::vector<const EvalRecord*>> by_lux;
    std::map<std::pair<double, std::string>, std::vector<const EvalRecord*>> by_pair;
    for (const auto& r : records) {
        by_lux[r.lux].push_back(&r);
        by_pair[{r.lux, r.label}].push_back(&r);
    }
    auto aggregate = [](const std::vector<const EvalRecord*>& group) {
        double ps = 0, ss = 0;
        for (const auto* r : group) {
            ps += r->psnr_db;
            ss += r->ssim_score;
        }
        const double n = static_cast<double>(group.size());
        return std::pair{ps / n, ss / n};
    };

    EvalTable table;
    for (const auto& [lux, group] : by_lux) {
        const auto [mp, ms] = aggregate(group);
        table.by_lux.push_back({lux, "", group.size(), mp, ms});
    }
    for (const auto& [key, group] : by_pair) {
        const auto [mp, ms] = aggregate(group);
        table.by_lux_label.push_back({key.first, key.second, group.size(), mp, ms});
    }
    return table;
}

std::string eval_table_to_csv(const EvalTable& table) {
    std::ostringstream out;
    out << "lux,label,count,mean_psnr,mean_ssim\n";
    auto emit = [&](const EvalGroup& g) {
        out << g.lux << ',' << (g.label.empty() ? "(all)" : g.label) << ',' << g.count << ',';
        if (std::isinf(g.mean_psnr)) out << "inf";
        else out << g.mean_psnr;
        out << ',' << g.mean_ssim << '\n';
    };
    for (const auto& g : table.by_lux) emit(g);
    for (const auto& g : table.by_lux_label) emit(g);
    return out.str();
}

}  // namespace fsid
