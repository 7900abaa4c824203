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

#include "fsid/rng.hpp"

#include <cmath>
#include <numbers>

namespace fsid {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Stafford variant 13 finalizer.
inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

uint64_t fnv1a(const void* data, size_t size, uint64_t basis) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = basis;
    for (size_t i = 0; i < size; i++) {
        h ^= p[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

Rng::Rng(uint64_t seed, uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      key_(mix64(seed) ^ mix64(mix64(stream_id) + 0x1F83D9ABFB41BD6Bull)) {}

Rng Rng::derive(std::string_view label) const {
    const uint64_t child = mix64(stream_id_ + kGolden) ^ fnv1a(label.data(), label.size());
    return Rng(seed_, child);
}

Rng Rng::derive(std::string_view label, uint64_t index) const {
    const uint64_t h = fnv1a(label.data(), label.size());
    const uint64_t child = mix64(stream_id_ + kGolden) ^ mix64(h + mix64(index + 1));
    return Rng(seed_, child);
}

uint64_t Rng::next_u64() {
    counter_++;
    return mix64(key_ + counter_ * kGolden);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    // Modulo bias is < 2^-50 for the spans used here (pool sizes, angles).
    return lo + static_cast<int64_t>(next_u64() % span);
}

double Rng::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // Box-Muller; u1 nudged away from 0 so log() stays finite.
    const double u1 = next_double() + 0x1.0p-54;
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace fsid
