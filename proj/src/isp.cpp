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

#include "fsid/isp.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsid {

namespace {

double frobenius(const Mat3& a) {
    double s = 0;
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) s += double(a.m[i][j]) * a.m[i][j];
    return std::sqrt(s);
}

// Plausible device CCMs (RAW -> sRGB), rows summing to 1.
const Mat3 kDeviceCcms[4] = {
    {{{{1.60f, -0.40f, -0.20f}, {-0.30f, 1.50f, -0.20f}, {-0.10f, -0.50f, 1.60f}}}},
    {{{{1.90f, -0.70f, -0.20f}, {-0.25f, 1.45f, -0.20f}, {0.00f, -0.60f, 1.60f}}}},
    {{{{1.40f, -0.30f, -0.10f}, {-0.20f, 1.40f, -0.20f}, {-0.05f, -0.35f, 1.40f}}}},
    {{{{1.75f, -0.50f, -0.25f}, {-0.40f, 1.70f, -0.30f}, {-0.15f, -0.45f, 1.60f}}}},
};

}  // namespace

void IspParams::validate() const {
    const Mat3 inv = inverse(ccm);  // throws when singular
    if (frobenius(ccm) * frobenius(inv) >= 100.0)
        throw std::invalid_argument("IspParams: CCM condition number >= 100");
    for (float g : {wb_gains.x, wb_gains.y, wb_gains.z})
        if (g < 0.5f || g > 4.0f)
            throw std::invalid_argument("IspParams: WB gains outside [0.5, 4.0]");
}

float forward_tone_map(float x) {
    x = std::clamp(x, 0.0f, 1.0f);
    return x * x * (3.0f - 2.0f * x);
}

float invert_tone_map(float v) {
    v = std::clamp(v, 0.0f, 1.0f);
    return 0.5f - std::sin(std::asin(1.0f - 2.0f * v) / 3.0f);
}

float srgb_to_linear(float v) {
    v = std::clamp(v, 0.0f, 1.0f);
    return v <= 0.04045f ? v / 12.92f : std::pow((v + 0.055f) / 1.055f, 2.4f);
}

float linear_to_srgb_value(float v) {
    v = std::clamp(v, 0.0f, 1.0f);
    return v <= 0.0031308f ? v * 12.92f : 1.055f * std::pow(v, 1.0f / 2.4f) - 0.055f;
}

Vec3 invert_ccm(const Vec3& rgb, const Mat3& ccm) { return inverse(ccm) * rgb; }

Vec3 invert_wb(const Vec3& rgb, const Vec3& gains) {
    return {rgb.x / gains.x, rgb.y / gains.y, rgb.z / gains.z};
}

BayerImage mosaic(const RgbImage& rgb, CfaPattern pattern) {
    if (rgb.width % 2 || rgb.height % 2)
        throw std::invalid_argument("mosaic: dimensions must be even");
    BayerImage out(rgb.width, rgb.height, pattern);
    for (int r = 0; r < rgb.height; r++)
        for (int c = 0; c < rgb.width; c++)
            out.at(r, c) = rgb.at(r, c, static_cast<int>(cfa_channel(pattern, r, c)));
    return out;
}

BayerImage unprocess(const RgbImage& rgb, const IspParams& params, CfaPattern pattern) {
    params.validate();
    const Mat3 ccm_inv = inverse(params.ccm);
    RgbImage cam(rgb.width, rgb.height);
    for (size_t i = 0; i < rgb.pixel_count(); i++) {
        Vec3 p = {rgb.data[i * 3], rgb.data[i * 3 + 1], rgb.data[i * 3 + 2]};
        if (!params.assume_linear_input) {
            p = {invert_tone_map(p.x), invert_tone_map(p.y), invert_tone_map(p.z)};
            p = {srgb_to_linear(p.x), srgb_to_linear(p.y), srgb_to_linear(p.z)};
        }
        p = ccm_inv * p;
        p = invert_wb(p, params.wb_gains);
        cam.data[i * 3] = std::clamp(p.x, 0.0f, 1.0f);
        cam.data[i * 3 + 1] = std::clamp(p.y, 0.0f, 1.0f);
        cam.data[i * 3 + 2] = std::clamp(p.z, 0.0f, 1.0f);
    }
    return mosaic(cam, pattern);
}

IspParams sample_isp_params(Rng& rng) {
    IspParams params;
    params.wb_gains = {static_cast<float>(rng.log_uniform(0.6, 2.4)), 1.0f,
                       static_cast<float>(rng.log_uniform(0.6, 2.4))};
    double w[4];
    double total = 0;
    for (double& wi : w) { wi = rng.next_double() + 1e-6; total += wi; }
    Mat3 ccm;
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            double v = 0;
            for (int d = 0; d < 4; d++) v += (w[d] / total) * kDeviceCcms[d].m[i][j];
            ccm.m[i][j] = static_cast<float>(v);
        }
    params.ccm = ccm;
    return params;
}

std::string isp_params_to_json(const IspParams& p) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; i++) rows.push_back({p.ccm.m[i][0], p.ccm.m[i][1], p.ccm.m[i][2]});
    nlohmann::json j = {{"schema", "fsidgen-isp-1"},
                        {"ccm", rows},
                        {"wb_gains", {p.wb_gains.x, p.wb_gains.y, p.wb_gains.z}},
                        {"assume_linear_input", p.assume_linear_input}};
    return j.dump(2);
}

IspParams isp_params_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("schema") != "fsidgen-isp-1")
        throw std::invalid_argument("unsupported ISP params schema");
    IspParams p;
    for (int i = 0; i < 3; i++)
        for (int k = 0; k < 3; k++) p.ccm.m[i][k] = j.at("ccm").at(i).at(k);
    p.wb_gains = {j.at("wb_gains").at(0), j.at("wb_gains").at(1), j.at("wb_gains").at(2)};
    p.assume_linear_input = j.value("assume_linear_input", true);
    p.validate();
    return p;
}

}  // namespace fsid
