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

#include "fsid/geometry.hpp"
#include "fsid/image.hpp"
#include "fsid/rng.hpp"

namespace fsid {

/// ISP parameters in the RAW -> sRGB (forward) direction. Unprocessing
/// applies their inverses in order: tone inverse, gamma inverse, CCM inverse,
/// WB inverse, clamp, mosaic. When assume_linear_input is set (the renderer
/// emits linear light) the tone and gamma inverses are skipped.
struct IspParams {
    Mat3 ccm = Mat3::identity();        // rows normalized to sum 1
    Vec3 wb_gains = {1.0f, 1.0f, 1.0f}; // g_G fixed at 1
    bool assume_linear_input = true;

    void validate() const;  // throws std::invalid_argument
};

/// Inverse of smoothstep s(x) = 3x^2 - 2x^3 via x = 1/2 - sin(asin(1-2v)/3).
float invert_tone_map(float v);
float forward_tone_map(float x);

/// Standard sRGB EOTF and its inverse (OETF).
float srgb_to_linear(float v);
float linear_to_srgb_value(float v);

/// Pixel times ccm^{-1}; throws on a singular matrix.
Vec3 invert_ccm(const Vec3& rgb, const Mat3& ccm);

/// Per-channel division by gains. No clamping here; the full chain clamps once.
Vec3 invert_wb(const Vec3& rgb, const Vec3& gains);

/// Takes the pattern-dictated channel of each RGB pixel. Throws on odd dims.
BayerImage mosaic(const RgbImage& rgb, CfaPattern pattern);

/// Full unprocessing chain; output clamped to [0,1] before mosaicking.
BayerImage unprocess(const RgbImage& rgb, const IspParams& params, CfaPattern pattern);

/// Random plausible ISP draw: WB gains log-uniform in [0.6, 2.4] for R and B,
/// CCM a convex combination of four fixed device-like matrices.
IspParams sample_isp_params(Rng& rng);

std::string isp_params_to_json(const IspParams& params);
IspParams isp_params_from_json(const std::string& json_text);

}  // namespace fsid
