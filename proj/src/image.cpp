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

#include "fsid/image.hpp"

namespace fsid {

const char* to_string(CfaPattern p) {
    switch (p) {
        case CfaPattern::RGGB: return "RGGB";
        case CfaPattern::BGGR: return "BGGR";
        case CfaPattern::GRBG: return "GRBG";
        case CfaPattern::GBRG: return "GBRG";
    }
    return "?";
}

CfaPattern cfa_pattern_from_string(const std::string& s) {
    if (s == "RGGB") return CfaPattern::RGGB;
    if (s == "BGGR") return CfaPattern::BGGR;
    if (s == "GRBG") return CfaPattern::GRBG;
    if (s == "GBRG") return CfaPattern::GBRG;
    throw std::invalid_argument("unknown CFA pattern: " + s);
}

char to_char(Channel c) {
    switch (c) {
        case Channel::R: return 'R';
        case Channel::G: return 'G';
        case Channel::B: return 'B';
    }
    return '?';
}

Channel cfa_channel(CfaPattern pattern, int64_t row, int64_t col) {
    // 2x2 cell layout per pattern, index = (row%2)*2 + col%2.
    static constexpr Channel kCells[4][4] = {
        {Channel::R, Channel::G, Channel::G, Channel::B},  // RGGB
        {Channel::B, Channel::G, Channel::G, Channel::R},  // BGGR
        {Channel::G, Channel::R, Channel::B, Channel::G},  // GRBG
        {Channel::G, Channel::B, Channel::R, Channel::G},  // GBRG
    };
    return kCells[static_cast<int>(pattern)][(row % 2) * 2 + (col % 2)];
}

Channel channel_at(const BayerImage& img, int64_t row, int64_t col) {
    if (row < 0 || col < 0 || row >= img.height || col >= img.width)
        throw std::out_of_range("channel_at: pixel outside the frame");
    return cfa_channel(img.pattern, row, col);
}

}  // namespace fsid
