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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fsid/diversity.hpp"
#include "fsid/rng.hpp"

using namespace fsid;

namespace {

// Independent brute-force Sobel oracle: no shared code with the library path.
double brute_force_edge_ratio(const RgbImage& img, double threshold) {
    const int w = img.width, h = img.height;
    auto luma_at = [&](int r, int c) {
        // reflect-101 borders
        r = r < 0 ? -r : (r >= h ? 2 * h - 2 - r : r);
        c = c < 0 ? -c : (c >= w ? 2 * w - 2 - c : c);
        return 0.2126 * img.at(r, c, 0) + 0.7152 * img.at(r, c, 1) + 0.0722 * img.at(r, c, 2);
    };
    const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
    const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
    int count = 0;
    for (int r = 0; r < h; r++)
        for (int c = 0; c < w; c++) {
            double gx = 0, gy = 0;
            for (int dr = -1; dr <= 1; dr++)
                for (int dc = -1; dc <= 1; dc++) {
                    gx += kx[dr + 1][dc + 1] * luma_at(r + dr, c + dc);
                    gy += ky[dr + 1][dc + 1] * luma_at(r + dr, c + dc);
                }
            if (std::sqrt(gx * gx + gy * gy) > threshold) count++;
        }
    return static_cast<double>(count) / (w * h);
}

RgbImage constant_image(int w, int h, float v) {
    RgbImage img(w, h);
    for (auto& x : img.data) x = v;
    return img;
}

RgbImage step_image(int w, int h) {
    RgbImage img(w, h);
    for (int r = 0; r < h; r++)
        for (int c = 0; c < w; c++)
            for (int ch = 0; ch < 3; ch++) img.at(r, c, ch) = c < w / 2 ? 0.0f : 1.0f;
    return img;
}

// cell = 1 gives the classic one-pixel checkerboard.
RgbImage checkerboard_image(int w, int h, int cell) {
    RgbImage img(w, h);
    for (int r = 0; r < h; r++)
        for (int c = 0; c < w; c++)
            for (int ch = 0; ch < 3; ch++)
                img.at(r, c, ch) = (r / cell + c / cell) % 2 ? 1.0f : 0.0f;
    return img;
}

}  // namespace

TEST_CASE("constant image has zero edge ratio at any threshold") {
    const auto img = constant_image(32, 32, 0.42f);
    CHECK(edge_ratio(img, 0.01) == 0.0);
    CHECK(edge_ratio(img, 0.5) == 0.0);
}

TEST_CASE("vertical step fires two columns per row") {
    const int w = 64, h = 32;
    const auto img = step_image(w, h);
    const double oracle = brute_force_edge_ratio(img, 0.5);
    CHECK(oracle == doctest::Approx(2.0 / w));
    CHECK(edge_ratio(img, 0.5) == doctest::Approx(oracle));
}

TEST_CASE("sobel is blind to period-2 patterns") {
    // The 3x3 kernels sample at +/-1, so a one-pixel checkerboard aliases to
    // zero gradient everywhere.  The brute-force oracle agrees.
    const auto img = checkerboard_image(32, 32, 1);
    CHECK(brute_force_edge_ratio(img, 0.1) == 0.0);
    CHECK(edge_ratio(img, 0.1) == 0.0);
}

TEST_CASE("two-pixel checkerboard saturates the edge ratio") {
    const auto img = checkerboard_image(32, 32, 2);
    const double oracle = brute_force_edge_ratio(img, 0.1);
    CHECK(oracle >= 0.9);
    CHECK(edge_ratio(img, 0.1) == doctest::Approx(oracle));
}

TEST_CASE("edge ratio matches the brute-force oracle on random images") {
    Rng rng(17);
    RgbImage img(24, 16);
    for (auto& v : img.data) v = static_cast<float>(rng.next_double());
    for (double t : {0.05, 0.1, 0.3, 1.0})
        CHECK(edge_ratio(img, t) == doctest::Approx(brute_force_edge_ratio(img, t)));
}

TEST_CASE("edge ratio is invariant to a global intensity offset") {
    Rng rng(23);
    RgbImage img(20, 20);
    for (auto& v : img.data) v = static_cast<float>(rng.next_double() * 0.5);
    RgbImage shifted = img;
    for (auto& v : shifted.data) v += 0.25f;
    CHECK(edge_ratio(img, 0.1) == edge_ratio(shifted, 0.1));
}

TEST_CASE("edge ratio is monotone non-increasing in threshold") {
    Rng rng(29);
    RgbImage img(32, 32);
    for (auto& v : img.data) v = static_cast<float>(rng.next_double());
    double prev = 1.0;
    for (double t = 0.05; t <= 2.0; t += 0.05) {
        const double r = edge_ratio(img, t);
        CHECK(r <= prev);
        prev = r;
    }
}

TEST_CASE("color entropy basics") {
    CHECK(color_entropy(constant_image(16, 16, 0.3f)) == 0.0);

    // Exactly two equally-populated bins -> 1 bit.
    RgbImage two(16, 16);
    for (size_t i = 0; i < two.pixel_count(); i++) {
        const float v = i % 2 ? 0.9f : 0.1f;
        two.data[i * 3] = two.data[i * 3 + 1] = two.data[i * 3 + 2] = v;
    }
    CHECK(color_entropy(two) == doctest::Approx(1.0));

    // Uniform coverage of all 512 bins -> 9 bits.
    RgbImage full(64, 8);
    size_t i = 0;
    for (int r = 0; r < 8; r++)
        for (int g = 0; g < 8; g++)
            for (int b = 0; b < 8; b++) {
                full.data[i * 3] = (r + 0.5f) / 8.0f;
                full.data[i * 3 + 1] = (g + 0.5f) / 8.0f;
                full.data[i * 3 + 2] = (b + 0.5f) / 8.0f;
                i++;
            }
    CHECK(color_entropy(full) == doctest::Approx(9.0));
}

TEST_CASE("color entropy is permutation-invariant over pixels") {
    Rng rng(31);
    RgbImage img(16, 16);
    for (auto& v : img.data) v = static_cast<float>(rng.next_double());
    RgbImage reversed(16, 16);
    const size_t n = img.pixel_count();
    for (size_t i = 0; i < n; i++)
        for (int ch = 0; ch < 3; ch++) reversed.data[i * 3 + ch] = img.data[(n - 1 - i) * 3 + ch];
    CHECK(color_entropy(img) == doctest::Approx(color_entropy(reversed)));
}

TEST_CASE("batch validation gates on the mean edge ratio") {
    const auto flat = constant_image(32, 32, 0.5f);
    const auto busy = checkerboard_image(32, 32, 2);

    auto low = validate_batch({flat, flat, flat}, 0.05, 0.5, 0.1);
    CHECK_FALSE(low.accepted);
    CHECK(low.mean_edge_ratio == 0.0);

    auto high = validate_batch({busy, busy}, 0.05, 0.5, 0.1);
    CHECK_FALSE(high.accepted);
    CHECK(high.mean_edge_ratio >= 0.9);

    // Mix the two oracles so the mean lands inside the band.
    std::vector<RgbImage> mixed;
    for (int i = 0; i < 3; i++) mixed.push_back(flat);
    mixed.push_back(busy);
    auto ok = validate_batch(mixed, 0.05, 0.5, 0.1);
    CHECK(ok.accepted);
    CHECK(ok.edge_ratios.size() == 4);
}

TEST_CASE("empty batch and inverted band are errors") {
    CHECK_THROWS_AS(validate_batch({}, 0.1, 0.4, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(validate_batch({constant_image(8, 8, 0.1f)}, 0.4, 0.1, 0.1),
                    std::invalid_argument);
}
