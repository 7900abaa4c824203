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
#include <string_view>

namespace fsid {

/// Counter-based splittable random stream.
///
/// The generator is fixed so manifests stay portable: output i of stream
/// (seed, stream_id) is
///
///   mix64(key + (i+1) * 0x9E3779B97F4A7C15)    (SplitMix64)
///
/// where key = mix64(seed) ^ mix64(mix64(stream_id) + 0x1F83D9ABFB41BD6B
/// and mix64 is the Stafford "variant 13" finalizer. Everything is 64-bit
/// integer arithmetic, so the uniform output is bit-identical across
/// platforms. Normal deviates go through libm (Box-Muller) and may differ
/// in the last ulp across libm versions.
///
/// Streams are single-owner. Never share one across concurrent tasks;
/// derive a child per task instead.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream_id = 0);

    /// Deterministic child stream; same (parent seed/stream, label) always
    /// yields the same child. The parent's counter position is irrelevant.
    Rng derive(std::string_view label) const;
    Rng derive(std::string_view label, uint64_t index) const;

    uint64_t next_u64();
    /// Uniform in [0,1), 53 bits of mantissa.
    double next_double();
    double uniform(double lo, double hi);
    /// Inclusive on both ends.
    int64_t uniform_int(int64_t lo, int64_t hi);
    double log_uniform(double lo, double hi);
    /// Standard normal via Box-Muller (pairs cached).
    double next_normal();

    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_id_; }

private:
    uint64_t seed_;
    uint64_t stream_id_;
    uint64_t key_;
    uint64_t counter_ = 0;
    double spare_normal_ = 0;
    bool has_spare_ = false;
};

/// FNV-1a over arbitrary bytes; also the checksum used by dataset manifests.
uint64_t fnv1a(const void* data, size_t size, uint64_t basis = 0xCBF29CE484222325ull);

}  // namespace fsid
