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
#include <optional>
#include <string>
#include <vector>

#include "fsid/calibration.hpp"
#include "fsid/isp.hpp"
#include "fsid/scene.hpp"

namespace fsid {

/// Pairs are sharded into subdirectories of 1000 so directory listings stay
/// tractable at large scale.
constexpr size_t kShardSize = 1000;
constexpr const char* kManifestName = "manifest.jsonl";

struct BuildConfig {
    size_t count = 10;
    uint64_t seed = 0;
    GeneratorConfig generator;
    NoiseProfile profile;
    bool randomize_isp = true;
    IspParams fixed_isp;  // used when randomize_isp is false
    double gain_scale_min = 0.25;
    double gain_scale_max = 4.0;
    CfaPattern pattern = CfaPattern::RGGB;
    int workers = 1;
};

std::string build_config_to_json(const BuildConfig& cfg);
BuildConfig build_config_from_json(const std::string& json_text);

struct PairRecord {
    std::string pair_id;
    uint64_t pair_index = 0;
    uint64_t scene_seed = 0;
    IspParams isp;
    double gain_scale = 0;
    std::string clean_path;  // relative to dataset root
    uint64_t clean_checksum = 0;
    std::string noisy_path;
    uint64_t noisy_checksum = 0;
    int width = 0;
    int height = 0;
    CfaPattern pattern = CfaPattern::RGGB;
    std::optional<std::string> error;  // set when the pair was skipped
};

struct DatasetManifest {
    std::string format_version = "fsidgen-manifest-1";
    uint64_t generator_config_hash = 0;
    BuildConfig config;
    std::vector<PairRecord> pairs;  // sorted by pair_index
    size_t skipped = 0;
};

/// Runs the full pipeline for every pair and writes the manifest last,
/// atomically. A partial-manifest recovery file is left behind when a write
/// fails mid-build. Deterministic: re-running with the same config yields a
/// bit-identical tree.
DatasetManifest build_dataset(const BuildConfig& cfg, const std::filesystem::path& out_dir);

DatasetManifest load_manifest(const std::filesystem::path& manifest_path);

struct VerifyIssue {
    std::string pair_id;
    std::string what;
};

struct VerifyReport {
    size_t pairs_checked = 0;
    size_t spot_checks = 0;
    std::vector<VerifyIssue> issues;
    bool passed() const { return issues.empty(); }
};

/// Re-checksums every file, re-validates geometry/pattern agreement, confirms
/// clean and noisy differ under a nonzero profile, and regenerates ~1% of the
/// clean frames from their recorded seeds for a bit-exact comparison.
VerifyReport verify_dataset(const std::filesystem::path& manifest_path);

std::string verify_report_to_string(const VerifyReport& report);

}  // namespace fsid
