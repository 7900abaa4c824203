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

#include "fsid/raw_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace fsid {

namespace {

constexpr char kMagic[8] = {'F', 'S', 'I', 'D', 'R', 'A', 'W', '1'};
constexpr size_t kHeaderSize = 32;

void put_u32le(unsigned char* p, uint32_t v) {
    p[0] = v & 0xFF; p[1] = (v >> 8) & 0xFF; p[2] = (v >> 16) & 0xFF; p[3] = (v >> 24) & 0xFF;
}
void put_u16le(unsigned char* p, uint16_t v) { p[0] = v & 0xFF; p[1] = (v >> 8) & 0xFF; }
uint32_t get_u32le(const unsigned char* p) {
    return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 | uint32_t(p[3]) << 24;
}
uint16_t get_u16le(const unsigned char* p) { return uint16_t(p[0]) | uint16_t(p[1]) << 8; }

uint16_t quantize(float v, RawLevels lv) {
    const float span = static_cast<float>(lv.white - lv.black);
    const float q = std::round(std::clamp(v, 0.0f, 1.0f) * span) + lv.black;
    return static_cast<uint16_t>(std::clamp(q, 0.0f, 65535.0f));
}

float dequantize(uint16_t s, RawLevels lv) {
    const float span = static_cast<float>(lv.white - lv.black);
    return std::clamp((static_cast<float>(s) - lv.black) / span, 0.0f, 1.0f);
}

void append_header(std::vector<unsigned char>& out, uint32_t w, uint32_t h, uint8_t pattern,
                   RawLevels lv) {
    unsigned char hdr[kHeaderSize] = {};
    std::memcpy(hdr, kMagic, 8);
    put_u32le(hdr + 8, w);
    put_u32le(hdr + 12, h);
    hdr[16] = pattern;
    hdr[17] = 16;  // bit depth
    put_u16le(hdr + 18, lv.black);
    put_u16le(hdr + 20, lv.white);
    out.insert(out.end(), hdr, hdr + kHeaderSize);
}

RawHeaderInfo parse_header(std::ifstream& in, const std::filesystem::path& path) {
    unsigned char hdr[kHeaderSize];
    if (!in.read(reinterpret_cast<char*>(hdr), kHeaderSize))
        throw std::runtime_error("truncated FSIDRAW header: " + path.string());
    if (std::memcmp(hdr, kMagic, 8) != 0)
        throw std::runtime_error("bad FSIDRAW magic: " + path.string());
    if (hdr[17] != 16)
        throw std::runtime_error("unsupported FSIDRAW bit depth: " + path.string());
    RawHeaderInfo info;
    info.width = get_u32le(hdr + 8);
    info.height = get_u32le(hdr + 12);
    info.pattern_code = hdr[16];
    info.levels.black = get_u16le(hdr + 18);
    info.levels.white = get_u16le(hdr + 20);
    if (info.levels.white <= info.levels.black)
        throw std::runtime_error("degenerate black/white levels: " + path.string());
    return info;
}

void append_samples(std::vector<unsigned char>& out, const std::vector<float>& data, RawLevels lv) {
    const size_t pos = out.size();
    out.resize(pos + data.size() * 2);
    for (size_t i = 0; i < data.size(); i++) put_u16le(&out[pos + i * 2], quantize(data[i], lv));
}

void dump_bytes(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<float> read_samples(std::ifstream& in, size_t count, RawLevels lv,
                                const std::filesystem::path& path) {
    std::vector<unsigned char> buf(count * 2);
    if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
        throw std::runtime_error("truncated FSIDRAW payload: " + path.string());
    std::vector<float> data(count);
    for (size_t i = 0; i < count; i++) data[i] = dequantize(get_u16le(&buf[i * 2]), lv);
    return data;
}

}  // namespace

std::vector<unsigned char> encode_raw(const BayerImage& img, RawLevels lv) {
    std::vector<unsigned char> bytes;
    bytes.reserve(kHeaderSize + img.pixel_count() * 2);
    append_header(bytes, static_cast<uint32_t>(img.width), static_cast<uint32_t>(img.height),
                  static_cast<uint8_t>(img.pattern), lv);
    append_samples(bytes, img.data, lv);
    return bytes;
}

std::vector<unsigned char> encode_raw_rgb(const RgbImage& img, RawLevels lv) {
    std::vector<unsigned char> bytes;
    bytes.reserve(kHeaderSize + img.pixel_count() * 6);
    append_header(bytes, static_cast<uint32_t>(img.width), static_cast<uint32_t>(img.height),
                  kRawPatternRgb, lv);
    // Plane-sequential: deinterleave.
    std::vector<float> plane(img.pixel_count());
    for (int ch = 0; ch < 3; ch++) {
        for (size_t i = 0; i < img.pixel_count(); i++) plane[i] = img.data[i * 3 + ch];
        append_samples(bytes, plane, lv);
    }
    return bytes;
}

void write_raw(const std::filesystem::path& path, const BayerImage& img, RawLevels lv) {
    dump_bytes(path, encode_raw(img, lv));
}

void write_raw_rgb(const std::filesystem::path& path, const RgbImage& img, RawLevels lv) {
    dump_bytes(path, encode_raw_rgb(img, lv));
}

BayerImage read_raw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    const RawHeaderInfo info = parse_header(in, path);
    if (info.pattern_code > 3)
        throw std::runtime_error("not a mosaicked FSIDRAW file: " + path.string());
    BayerImage img(static_cast<int>(info.width), static_cast<int>(info.height),
                   static_cast<CfaPattern>(info.pattern_code));
    img.data = read_samples(in, img.pixel_count(), info.levels, path);
    return img;
}

RgbImage read_raw_rgb(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    const RawHeaderInfo info = parse_header(in, path);
    if (info.pattern_code != kRawPatternRgb)
        throw std::runtime_error("not a 3-plane FSIDRAW file: " + path.string());
    RgbImage img(static_cast<int>(info.width), static_cast<int>(info.height));
    for (int ch = 0; ch < 3; ch++) {
        auto plane = read_samples(in, img.pixel_count(), info.levels, path);
        for (size_t i = 0; i < img.pixel_count(); i++) img.data[i * 3 + ch] = plane[i];
    }
    return img;
}

RawHeaderInfo read_raw_header(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    return parse_header(in, path);
}

namespace {

float linear_to_srgb(float v) {
    v = std::clamp(v, 0.0f, 1.0f);
    return v <= 0.0031308f ? v * 12.92f : 1.055f * std::pow(v, 1.0f / 2.4f) - 0.055f;
}

void append_chunk(std::vector<unsigned char>& out, const char type[4],
                  const unsigned char* data, size_t size) {
    unsigned char len[4];
    put_u32le(len, static_cast<uint32_t>(size));
    std::reverse(len, len + 4);  // PNG lengths are big-endian
    out.insert(out.end(), len, len + 4);
    const size_t type_pos = out.size();
    out.insert(out.end(), type, type + 4);
    if (size) out.insert(out.end(), data, data + size);
    const uint32_t crc = static_cast<uint32_t>(
        crc32(0, out.data() + type_pos, static_cast<uInt>(4 + size)));
    unsigned char crcb[4] = {static_cast<unsigned char>(crc >> 24),
                             static_cast<unsigned char>(crc >> 16),
                             static_cast<unsigned char>(crc >> 8),
                             static_cast<unsigned char>(crc)};
    out.insert(out.end(), crcb, crcb + 4);
}

}  // namespace

void write_png_preview(const std::filesystem::path& path, const RgbImage& img) {
    const uint32_t w = static_cast<uint32_t>(img.width);
    const uint32_t h = static_cast<uint32_t>(img.height);

    // Filter type 0 per scanline.
    std::vector<unsigned char> scanlines;
    scanlines.reserve(static_cast<size_t>(h) * (1 + 3 * w));
    for (uint32_t r = 0; r < h; r++) {
        scanlines.push_back(0);
        for (uint32_t c = 0; c < w; c++)
            for (int ch = 0; ch < 3; ch++) {
                const float v = linear_to_srgb(img.at(static_cast<int>(r), static_cast<int>(c), ch));
                scanlines.push_back(static_cast<unsigned char>(std::lround(v * 255.0f)));
            }
    }

    uLongf zsize = compressBound(static_cast<uLong>(scanlines.size()));
    std::vector<unsigned char> zdata(zsize);
    if (compress2(zdata.data(), &zsize, scanlines.data(), static_cast<uLong>(scanlines.size()), 6) != Z_OK)
        throw std::runtime_error("PNG deflate failed");
    zdata.resize(zsize);

    std::vector<unsigned char> png = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    unsigned char ihdr[13] = {
        static_cast<unsigned char>(w >> 24), static_cast<unsigned char>(w >> 16),
        static_cast<unsigned char>(w >> 8),  static_cast<unsigned char>(w),
        static_cast<unsigned char>(h >> 24), static_cast<unsigned char>(h >> 16),
        static_cast<unsigned char>(h >> 8),  static_cast<unsigned char>(h),
        8, 2, 0, 0, 0};  // 8-bit, truecolor
    append_chunk(png, "IHDR", ihdr, sizeof(ihdr));
    unsigned char srgb[1] = {0};  // perceptual intent
    append_chunk(png, "sRGB", srgb, 1);
    append_chunk(png, "IDAT", zdata.data(), zdata.size());
    append_chunk(png, "IEND", nullptr, 0);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(png.data()), static_cast<std::streamsize>(png.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace fsid
