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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsid {

enum class CfaPattern : uint8_t { RGGB = 0, BGGR = 1, GRBG = 2, GBRG = 3 };

enum class Channel : uint8_t { R = 0, G = 1, B = 2 };

const char* to_string(CfaPattern p);
CfaPattern cfa_pattern_from_string(const std::string& s);
char to_char(Channel c);

/// Channel sampled at (row, col) of the 2x2 mosaic, independent of image size.
Channel cfa_channel(CfaPattern pattern, int64_t row, int64_t col);

/// Linear-light RGB frame, row-major interleaved triplets, values in [0,1]
/// after clamping stages (pre-clamp intermediates may exceed 1).
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<float> data;  // width * height * 3

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0.0f) {}

    float& at(int row, int col, int ch) {
        return data[(static_cast<size_t>(row) * width + col) * 3 + ch];
    }
    float at(int row, int col, int ch) const {
        return data[(static_cast<size_t>(row) * width + col) * 3 + ch];
    }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

/// Single-plane mosaicked frame with even dimensions.
struct BayerImage {
    int width = 0;
    int height = 0;
    CfaPattern pattern = CfaPattern::RGGB;
    std::vector<float> data;  // width * height

    BayerImage() = default;
    BayerImage(int w, int h, CfaPattern p) : width(w), height(h), pattern(p) {
        if (w <= 0 || h <= 0 || w % 2 != 0 || h % 2 != 0)
            throw std::invalid_argument("BayerImage dimensions must be positive and even");
        data.assign(static_cast<size_t>(w) * h, 0.0f);
    }

    float& at(int row, int col) { return data[static_cast<size_t>(row) * width + col]; }
    float at(int row, int col) const { return data[static_cast<size_t>(row) * width + col]; }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

/// Channel of pixel (row, col); throws std::out_of_range outside the frame.
Channel channel_at(const BayerImage& img, int64_t row, int64_t col);

}  // namespace fsid
