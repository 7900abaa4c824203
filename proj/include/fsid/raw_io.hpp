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

#include <filesystem>

#include "fsid/image.hpp"

namespace fsid {

/// FSIDRAW container, bit-exact layout:
///   32-byte header: magic "FSIDRAW1" | width u32 LE | height u32 LE |
///   pattern u8 (0..3 = CFA, 255 = non-mosaic 3-plane RGB) | bit depth u8
///   (always 16) | black level u16 LE | white level u16 LE | zero padding.
/// Payload: u16 LE samples, row-major. The RGB variant stores three full
/// planes in sequence (all R rows, all G rows, all B rows).
/// Stored sample = round(intensity * (white - black)) + black.
struct RawLevels {
    uint16_t black = 0;
    uint16_t white = 65535;
};

constexpr uint8_t kRawPatternRgb = 255;

void write_raw(const std::filesystem::path& path, const BayerImage& img, RawLevels levels = {});
void write_raw_rgb(const std::filesystem::path& path, const RgbImage& img, RawLevels levels = {});

/// Serialized file content without touching disk (checksumming, verify).
std::vector<unsigned char> encode_raw(const BayerImage& img, RawLevels levels = {});
std::vector<unsigned char> encode_raw_rgb(const RgbImage& img, RawLevels levels = {});

BayerImage read_raw(const std::filesystem::path& path);
RgbImage read_raw_rgb(const std::filesystem::path& path);

/// Header peek without loading the payload.
struct RawHeaderInfo {
    uint32_t width = 0;
    uint32_t height = 0;
    uint8_t pattern_code = 0;
    RawLevels levels;
};
RawHeaderInfo read_raw_header(const std::filesystem::path& path);

/// 8-bit sRGB-encoded PNG preview. Display only, never a pipeline input.
void write_png_preview(const std::filesystem::path& path, const RgbImage& img);

}  // namespace fsid
