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

#include "fsid/calibration.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsid {

std::array<std::vector<MeanVariancePoint>, 3> mean_variance_samples(const BurstStack& stack) {
    const size_t F = stack.frames.size();
    if (F < 2) throw std::invalid_argument("mean_variance_samples: need at least 2 frames");
    const auto& first = stack.frames.front();
    for (const auto& f : stack.frames) {
        if (f.width != first.width || f.height != first.height || f.pattern != first.pattern)
            throw std::invalid_argument("mean_variance_samples: mismatched frame geometry");
    }

    const size_t n = first.pixel_count();
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    for (const auto& f : stack.frames) {
        for (size_t i = 0; i < n; i++) {
            const double v = f.data[i];
            sum[i] += v;
            sumsq[i] += v * v;
        }
    }

    // Normalized levels are 0 and 1; exclude means within 2% of either.
    constexpr double kClipMargin = 0.02;
    std::array<std::vector<MeanVariancePoint>, 3> out;
    const double fd = static_cast<double>(F);
    for (int r = 0; r < first.height; r++) {
        for (int c = 0; c < first.width; c++) {
            const size_t i = static_cast<size_t>(r) * first.width + c;
            const double mean = sum[i] / fd;
            if (mean < kClipMargin || mean > 1.0 - kClipMargin) continue;
            const double variance = std::max(0.0, (sumsq[i] - fd * mean * mean) / (fd - 1.0));
            const auto ch = static_cast<size_t>(cfa_channel(first.pattern, r, c));
            out[ch].push_back({mean, variance});
        }
    }
    return out;
}

namespace {

struct FitResult {
    double k = 0, sigma2 = 0, r_squared = 0, residual_rms = 0;
    bool clamped = false;
};

FitResult fit_channel(const std::vector<MeanVariancePoint>& points) {
    // Bucket into equal-width intensity bins, then OLS over per-bin means.
    std::array<double, kCalibrationBins> sum_x{}, sum_v{};
    std::array<size_t, kCalibrationBins> count{};
    for (const auto& p : points) {
        const int b = std::clamp(static_cast<int>(p.mean * kCalibrationBins), 0,
                                 kCalibrationBins - 1);
        sum_x[b] += p.mean;
        sum_v[b] += p.variance;
        count[b]++;
    }

    std::vector<double> xs, vs;
    int populated = 0;
    for (int b = 0; b < kCalibrationBins; b++) {
        if (count[b] < kMinSamplesPerBin) continue;
        populated++;
        xs.push_back(sum_x[b] / static_cast<double>(count[b]));
        vs.push_back(sum_v[b] / static_cast<double>(count[b]));
    }
    if (populated < kMinPopulatedBins)
        throw InsufficientBinsError(
            "fit_noise_profile: only " + std::to_string(populated) + " bins with >= " +
                std::to_string(kMinSamplesPerBin) + " samples (need " +
                std::to_string(kMinPopulatedBins) + ")",
            count);

    const double n = static_cast<double>(xs.size());
    double mx = 0, mv = 0;
    for (size_t i = 0; i < xs.size(); i++) { mx += xs[i]; mv += vs[i]; }
    mx /= n;
    mv /= n;
    double sxx = 0, sxv = 0, svv = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxv += (xs[i] - mx) * (vs[i] - mv);
        svv += (vs[i] - mv) * (vs[i] - mv);
    }

    FitResult fit;
    fit.k = sxx > 0 ? sxv / sxx : 0.0;
    fit.sigma2 = mv - fit.k * mx;
    if (fit.k < 0) { fit.k = 0; fit.sigma2 = mv; fit.clamped = true; }
    if (fit.sigma2 < 0) { fit.sigma2 = 0; fit.clamped = true; }

    double ss_res = 0;
    for (size_t i = 0; i < xs.size(); i++) {
        const double r = vs[i] - (fit.k * xs[i] + fit.sigma2);
        ss_res += r * r;
    }
    fit.residual_rms = std::sqrt(ss_res / n);
    // Degenerate all-equal-variance case: a perfect flat line.
    fit.r_squared = svv > 0 ? 1.0 - ss_res / svv : 1.0;
    return fit;
}

}  // namespace

NoiseProfile fit_noise_profile(const std::array<std::vector<MeanVariancePoint>, 3>& samples) {
    NoiseProfile profile;
    profile.r_squared = 1.0;
    for (int ch = 0; ch < 3; ch++) {
        const FitResult fit = fit_channel(samples[ch]);
        profile.channels[ch] = {fit.k, fit.sigma2};
        profile.r_squared = std::min(profile.r_squared, fit.r_squared);
        profile.residual_rms = std::max(profile.residual_rms, fit.residual_rms);
        profile.clamped_negative = profile.clamped_negative || fit.clamped;
        profile.sample_count += samples[ch].size();
    }
    return profile;
}

std::string profile_to_json(const NoiseProfile& p) {
    nlohmann::json j = {
        {"format-version", "fsidgen-profile-1"},
        {"camera", p.camera_label},
        {"gain", p.gain_label},
        {"normalization", "0-1"},
        {"channels",
         {{"R", {{"k", p.channel(Channel::R).k}, {"sigma2", p.channel(Channel::R).sigma2}}},
          {"G", {{"k", p.channel(Channel::G).k}, {"sigma2", p.channel(Channel::G).sigma2}}},
          {"B", {{"k", p.channel(Channel::B).k}, {"sigma2", p.channel(Channel::B).sigma2}}}}},
        {"diagnostics",
         {{"r_squared", p.r_squared},
          {"residual_rms", p.residual_rms},
          {"sample_count", p.sample_count},
          {"clamped_negative", p.clamped_negative}}}};
    return j.dump(2);
}

NoiseProfile profile_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format-version") != "fsidgen-profile-1")
        throw std::invalid_argument("unsupported noise profile version");
    NoiseProfile p;
    p.camera_label = j.at("camera");
    p.gain_label = j.at("gain");
    const auto& ch = j.at("channels");
    const char* names[3] = {"R", "G", "B"};
    for (int i = 0; i < 3; i++) {
        p.channels[i].k = ch.at(names[i]).at("k");
        p.channels[i].sigma2 = ch.at(names[i]).at("sigma2");
        if (p.channels[i].k < 0 || p.channels[i].sigma2 < 0)
            throw std::invalid_argument("noise profile parameters must be non-negative");
    }
    if (j.contains("diagnostics")) {
        const auto& d = j.at("diagnostics");
        p.r_squared = d.value("r_squared", 0.0);
        p.residual_rms = d.value("residual_rms", 0.0);
        p.sample_count = d.value("sample_count", size_t{0});
        p.clamped_negative = d.value("clamped_negative", false);
    }
    return p;
}

}  // namespace fsid
