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

#include "fsid/dataset.hpp"

#include <json.hpp>

#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "fsid/noise.hpp"
#include "fsid/raw_io.hpp"
#include "fsid/render.hpp"
#include "fsid/rng.hpp"

namespace fsid {

using nlohmann::json;

namespace {

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

uint64_t parse_hex64(const std::string& s) { return std::stoull(s, nullptr, 16); }

std::string pair_name(uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "pair_%06llu", static_cast<unsigned long long>(index));
    return buf;
}

std::string shard_name(uint64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "shard_%03llu",
                  static_cast<unsigned long long>(index / kShardSize));
    return buf;
}

void write_bytes_atomic(const std::filesystem::path& path,
                        const std::vector<unsigned char>& bytes) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return bytes;
}

json isp_to_json_obj(const IspParams& p) { return json::parse(isp_params_to_json(p)); }

json pair_to_json(const PairRecord& r) {
    if (r.error) {
        return {{"type", "skipped"},
                {"pair_id", r.pair_id},
                {"pair_index", r.pair_index},
                {"error", *r.error}};
    }
    return {{"type", "pair"},
            {"pair_id", r.pair_id},
            {"pair_index", r.pair_index},
            {"scene_seed", r.scene_seed},
            {"isp", isp_to_json_obj(r.isp)},
            {"gain_scale", r.gain_scale},
            {"clean", {{"path", r.clean_path}, {"checksum", hex64(r.clean_checksum)}}},
            {"noisy", {{"path", r.noisy_path}, {"checksum", hex64(r.noisy_checksum)}}},
            {"width", r.width},
            {"height", r.height},
            {"pattern", to_string(r.pattern)}};
}

PairRecord pair_from_json(const json& j) {
    PairRecord r;
    r.pair_id = j.at("pair_id");
    r.pair_index = j.at("pair_index");
    if (j.at("type") == "skipped") {
        r.error = j.at("error").get<std::string>();
        return r;
    }
    r.scene_seed = j.at("scene_seed");
    r.isp = isp_params_from_json(j.at("isp").dump());
    r.gain_scale = j.at("gain_scale");
    r.clean_path = j.at("clean").at("path");
    r.clean_checksum = parse_hex64(j.at("clean").at("checksum"));
    r.noisy_path = j.at("noisy").at("path");
    r.noisy_checksum = parse_hex64(j.at("noisy").at("checksum"));
    r.width = j.at("width");
    r.height = j.at("height");
    r.pattern = cfa_pattern_from_string(j.at("pattern"));
    return r;
}

void write_manifest_lines(std::ostream& out, const DatasetManifest& m) {
    json header = {{"type", "header"},
                   {"format_version", m.format_version},
                   {"generator_config_hash", hex64(m.generator_config_hash)},
                   {"config", json::parse(build_config_to_json(m.config))},
                   {"count", m.config.count},
                   {"skipped", m.skipped},
                   {"shard_size", kShardSize},
                   {"clamp_policy", "clamp-0-1"}};
    out << header.dump() << '\n';
    for (const auto& r : m.pairs) out << pair_to_json(r).dump() << '\n';
}

}  // namespace

std::string build_config_to_json(const BuildConfig& cfg) {
    json j = {{"schema", "fsidgen-build-1"},
              {"count", cfg.count},
              {"seed", cfg.seed},
              {"generator", json::parse(generator_config_to_json(cfg.generator))},
              {"profile", json::parse(profile_to_json(cfg.profile))},
              {"randomize_isp", cfg.randomize_isp},
              {"fixed_isp", isp_to_json_obj(cfg.fixed_isp)},
              {"gain_scale", {cfg.gain_scale_min, cfg.gain_scale_max}},
              {"pattern", to_string(cfg.pattern)},
              {"workers", cfg.workers}};
    return j.dump(2);
}

BuildConfig build_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("schema") != "fsidgen-build-1")
        throw std::invalid_argument("unsupported build config schema");
    BuildConfig cfg;
    cfg.count = j.at("count");
    cfg.seed = j.at("seed");
    if (j.contains("generator")) cfg.generator = generator_config_from_json(j.at("generator").dump());
    if (j.contains("profile")) cfg.profile = profile_from_json(j.at("profile").dump());
    cfg.randomize_isp = j.value("randomize_isp", true);
    if (j.contains("fixed_isp")) cfg.fixed_isp = isp_params_from_json(j.at("fixed_isp").dump());
    if (j.contains("gain_scale")) {
        cfg.gain_scale_min = j.at("gain_scale").at(0);
        cfg.gain_scale_max = j.at("gain_scale").at(1);
    }
    if (j.contains("pattern")) cfg.pattern = cfa_pattern_from_string(j.at("pattern"));
    cfg.workers = j.value("workers", 1);
    return cfg;
}

DatasetManifest build_dataset(const BuildConfig& cfg, const std::filesystem::path& out_dir) {
    if (cfg.count == 0) throw std::invalid_argument("build_dataset: count must be positive");
    std::filesystem::create_directories(out_dir);

    DatasetManifest manifest;
    manifest.config = cfg;
    const std::string gencfg_json = generator_config_to_json(cfg.generator);
    manifest.generator_config_hash = fnv1a(gencfg_json.data(), gencfg_json.size());
    manifest.pairs.resize(cfg.count);

    const Rng base(cfg.seed);
    std::atomic<uint64_t> next_index{0};
    std::atomic<bool> fatal_io{false};
    std::string fatal_message;
    std::mutex fatal_mutex;

    auto run_pair = [&](uint64_t i) {
        PairRecord& rec = manifest.pairs[i];
        rec.pair_index = i;
        rec.pair_id = pair_name(i);
        const Rng pair_rng = base.derive("pair", i);
        try {
            const SceneSpec scene = sample_scene(pair_rng.derive("scene"), cfg.generator);
            rec.scene_seed = scene.scene_id;
            const RgbImage rgb = render(scene);

            IspParams isp = cfg.fixed_isp;
            if (cfg.randomize_isp) {
                Rng isp_rng = pair_rng.derive("isp");
                isp = sample_isp_params(isp_rng);
            }
            rec.isp = isp;
            const BayerImage clean = unprocess(rgb, isp, cfg.pattern);

            InjectionConfig inj;
            inj.profile = cfg.profile;
            inj.gain_scale_min = cfg.gain_scale_min;
            inj.gain_scale_max = cfg.gain_scale_max;
            const BayerImage noisy = inject(clean, inj, pair_rng.derive("noise"), &rec.gain_scale);

            const auto shard = out_dir / shard_name(i);
            std::filesystem::create_directories(shard);
            const auto clean_bytes = encode_raw(clean);
            const auto noisy_bytes = encode_raw(noisy);
            write_bytes_atomic(shard / (rec.pair_id + "_clean.raw"), clean_bytes);
            write_bytes_atomic(shard / (rec.pair_id + "_noisy.raw"), noisy_bytes);

            rec.clean_path = shard_name(i) + "/" + rec.pair_id + "_clean.raw";
            rec.clean_checksum = fnv1a(clean_bytes.data(), clean_bytes.size());
            rec.noisy_path = shard_name(i) + "/" + rec.pair_id + "_noisy.raw";
            rec.noisy_checksum = fnv1a(noisy_bytes.data(), noisy_bytes.size());
            rec.width = clean.width;
            rec.height = clean.height;
            rec.pattern = clean.pattern;
        } catch (const std::runtime_error& e) {
            // IO-level failure (disk full etc.): abort the build.
            std::lock_guard lock(fatal_mutex);
            fatal_io = true;
            if (fatal_message.empty()) fatal_message = e.what();
        } catch (const std::exception& e) {
            // Stage error: skip the pair, keep building.
            rec.error = e.what();
        }
    };

    auto worker = [&] {
        while (!fatal_io) {
            const uint64_t i = next_index.fetch_add(1);
            if (i >= cfg.count) break;
            run_pair(i);
        }
    };

    const int workers = std::max(1, cfg.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; t++) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& r : manifest.pairs)
        if (r.error) manifest.skipped++;

    if (fatal_io) {
        // Leave a recovery file with whatever completed, then report failure.
        std::ofstream partial(out_dir / "manifest.partial.jsonl");
        DatasetManifest done = manifest;
        std::erase_if(done.pairs, [](const PairRecord& r) { return r.clean_path.empty(); });
        write_manifest_lines(partial, done);
        throw std::runtime_error("build_dataset aborted on IO failure: " + fatal_message);
    }

    const auto manifest_path = out_dir / kManifestName;
    const auto tmp = out_dir / (std::string(kManifestName) + ".tmp");
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        write_manifest_lines(out, manifest);
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, manifest_path);
    return manifest;
}

DatasetManifest load_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest: " + manifest_path.string());
    DatasetManifest m;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        if (j.at("type") == "header") {
            m.format_version = j.at("format_version");
            m.generator_config_hash = parse_hex64(j.at("generator_config_hash"));
            m.config = build_config_from_json(j.at("config").dump());
            m.skipped = j.at("skipped");
            have_header = true;
        } else {
            m.pairs.push_back(pair_from_json(j));
        }
    }
    if (!have_header) throw std::runtime_error("manifest missing header record");
    return m;
}

VerifyReport verify_dataset(const std::filesystem::path& manifest_path) {
    const DatasetManifest m = load_manifest(manifest_path);
    const auto root = manifest_path.parent_path();
    VerifyReport report;

    const bool zero_profile = [&] {
        for (const auto& ch : m.config.profile.channels)
            if (ch.k > 0 || ch.sigma2 > 0) return false;
        return true;
    }();

    constexpr size_t kSpotStride = 100;  // regenerate every 100th pair (~1%)

    for (const auto& rec : m.pairs) {
        if (rec.error) continue;
        report.pairs_checked++;
        auto check_file = [&](const std::string& rel, uint64_t checksum,
                              const char* which) -> bool {
            const auto path = root / rel;
            if (!std::filesystem::exists(path)) {
                report.issues.push_back({rec.pair_id, std::string(which) + " file missing: " + rel});
                return false;
            }
            const auto bytes = read_file_bytes(path);
            if (fnv1a(bytes.data(), bytes.size()) != checksum) {
                report.issues.push_back({rec.pair_id, std::string(which) + " checksum mismatch: " + rel});
                return false;
            }
            return true;
        };
        const bool clean_ok = check_file(rec.clean_path, rec.clean_checksum, "clean");
        const bool noisy_ok = check_file(rec.noisy_path, rec.noisy_checksum, "noisy");
        if (!clean_ok || !noisy_ok) continue;

        const auto clean_info = read_raw_header(root / rec.clean_path);
        const auto noisy_info = read_raw_header(root / rec.noisy_path);
        if (clean_info.width != noisy_info.width || clean_info.height != noisy_info.height ||
            clean_info.pattern_code != noisy_info.pattern_code) {
            report.issues.push_back({rec.pair_id, "clean/noisy geometry or pattern mismatch"});
            continue;
        }
        if (!zero_profile && rec.clean_checksum == rec.noisy_checksum)
            report.issues.push_back({rec.pair_id, "pair identical under nonzero profile"});

        // Spot-check ~1%: regenerate the clean frame from the recorded seed.
        if (rec.pair_index % kSpotStride == 0) {
            report.spot_checks++;
            const Rng pair_rng = Rng(m.config.seed).derive("pair", rec.pair_index);
            const SceneSpec scene = sample_scene(pair_rng.derive("scene"), m.config.generator);
            const RgbImage rgb = render(scene);
            const BayerImage clean = unprocess(rgb, rec.isp, rec.pattern);
            const auto bytes = encode_raw(clean);
            if (fnv1a(bytes.data(), bytes.size()) != rec.clean_checksum)
                report.issues.push_back({rec.pair_id, "regenerated clean frame differs"});
        }
    }
    return report;
}

std::string verify_report_to_string(const VerifyReport& r) {
    std::ostringstream out;
    out << "pairs checked: " << r.pairs_checked << ", spot checks: " << r.spot_checks
        << ", issues: " << r.issues.size() << '\n';
    for (const auto& issue : r.issues) out << "  " << issue.pair_id << ": " << issue.what << '\n';
    out << (r.passed() ? "VERIFY PASS" : "VERIFY FAIL") << '\n';
    return out.str();
}

}  // namespace fsid
