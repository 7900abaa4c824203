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

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fsid/calibration.hpp"
#include "fsid/dataset.hpp"
#include "fsid/diversity.hpp"
#include "fsid/isp.hpp"
#include "fsid/metrics.hpp"
#include "fsid/noise.hpp"
#include "fsid/raw_io.hpp"
#include "fsid/render.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
}

std::pair<double, double> parse_range(const std::string& s, char sep) {
    const auto pos = s.find(sep);
    if (pos == std::string::npos)
        throw std::runtime_error("expected <low>" + std::string(1, sep) + "<high>, got: " + s);
    return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
}

std::vector<fs::path> sorted_files(const fs::path& dir, const std::string& extension) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == extension)
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

int cmd_generate(uint64_t seed, size_t count, const std::string& config_path,
                 const fs::path& out_dir, bool previews) {
    fsid::GeneratorConfig cfg;
    if (!config_path.empty()) cfg = fsid::generator_config_from_json(read_text(config_path));
    fs::create_directories(out_dir);
    const fsid::Rng base(seed);
    for (size_t i = 0; i < count; i++) {
        const auto spec = fsid::sample_scene(base.derive("scene", i), cfg);
        char name[32];
        std::snprintf(name, sizeof(name), "scene_%05zu", i);
        write_text(out_dir / (std::string(name) + ".json"), fsid::scene_to_json(spec));
        const fsid::RgbImage img = fsid::render(spec);
        fsid::write_raw_rgb(out_dir / (std::string(name) + ".rgb.raw"), img);
        if (previews) fsid::write_png_preview(out_dir / (std::string(name) + ".png"), img);
        std::cout << name << " rendered (" << img.width << "x" << img.height << ")\n";
    }
    return 0;
}

int cmd_analyze(const fs::path& in_dir, double threshold, const std::string& band,
                const std::string& report_path) {
    const auto [low, high] = parse_range(band, ':');
    std::vector<fsid::RgbImage> images;
    for (const auto& f : sorted_files(in_dir, ".raw"))
        if (f.string().ends_with(".rgb.raw")) images.push_back(fsid::read_raw_rgb(f));
    const auto report = fsid::validate_batch(images, low, high, threshold);
    const std::string text = fsid::report_to_json(report);
    if (!report_path.empty()) write_text(report_path, text);
    std::cout << text << '\n';
    std::cout << (report.accepted ? "ACCEPTED" : "REJECTED") << " (mean edge ratio "
              << report.mean_edge_ratio << ", band [" << low << ", " << high << "])\n";
    return report.accepted ? 0 : 1;
}

int cmd_calibrate(const fs::path& burst_dir, const std::string& camera, const std::string& gain,
                  const std::string& out_path) {
    fsid::BurstStack stack;
    stack.camera_label = camera;
    stack.gain_label = gain;
    for (const auto& f : sorted_files(burst_dir, ".raw"))
        if (!f.string().ends_with(".rgb.raw")) stack.frames.push_back(fsid::read_raw(f));
    std::cout << "loaded " << stack.frames.size() << " frames\n";
    const auto samples = fsid::mean_variance_samples(stack);
    auto profile = fsid::fit_noise_profile(samples);
    profile.camera_label = camera;
    profile.gain_label = gain;
    write_text(out_path, fsid::profile_to_json(profile));
    std::cout << fsid::profile_to_json(profile) << '\n';
    return 0;
}

int cmd_unprocess(const fs::path& in_dir, const std::string& isp_path, const std::string& pattern,
                  const fs::path& out_dir) {
    fsid::IspParams isp;
    if (!isp_path.empty()) isp = fsid::isp_params_from_json(read_text(isp_path));
    const auto cfa = fsid::cfa_pattern_from_string(pattern);
    fs::create_directories(out_dir);
    for (const auto& f : sorted_files(in_dir, ".raw")) {
        if (!f.string().ends_with(".rgb.raw")) continue;
        const auto rgb = fsid::read_raw_rgb(f);
        const auto bayer = fsid::unprocess(rgb, isp, cfa);
        auto name = f.filename().string();
        name = name.substr(0, name.size() - std::string(".rgb.raw").size()) + ".raw";
        fsid::write_raw(out_dir / name, bayer);
        std::cout << name << '\n';
    }
    return 0;
}

int cmd_inject(const fs::path& in_dir, const std::string& profile_path,
               const std::string& gain_range, uint64_t seed, const fs::path& out_dir) {
    fsid::InjectionConfig cfg;
    cfg.profile = fsid::profile_from_json(read_text(profile_path));
    std::tie(cfg.gain_scale_min, cfg.gain_scale_max) = parse_range(gain_range, ':');
    fs::create_directories(out_dir);
    const fsid::Rng base(seed);
    size_t index = 0;
    for (const auto& f : sorted_files(in_dir, ".raw")) {
        if (f.string().ends_with(".rgb.raw")) continue;
        const auto clean = fsid::read_raw(f);
        double gain = 0;
        const auto noisy = fsid::inject(clean, cfg, base.derive("image", index++), &gain);
        fsid::write_raw(out_dir / f.filename(), noisy);
        std::cout << f.filename().string() << " gain-scale " << gain << '\n';
    }
    return 0;
}

int cmd_build(const std::string& config_path, const fs::path& out_dir, int workers) {
    auto cfg = fsid::build_config_from_json(read_text(config_path));
    if (workers > 0) cfg.workers = workers;
    const auto manifest = fsid::build_dataset(cfg, out_dir);
    std::cout << "built " << (manifest.pairs.size() - manifest.skipped) << " pairs ("
              << manifest.skipped << " skipped) under " << out_dir.string() << '\n';
    return 0;
}

int cmd_verify(const fs::path& manifest_path) {
    const auto report = fsid::verify_dataset(manifest_path);
    std::cout << fsid::verify_report_to_string(report);
    return report.passed() ? 0 : 1;
}

int cmd_evaluate(const fs::path& pairs_path, const std::string& out_path) {
    std::ifstream in(pairs_path);
    if (!in) throw std::runtime_error("cannot open: " + pairs_path.string());
    const auto root = pairs_path.parent_path();
    std::vector<fsid::EvalRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        fsid::EvalRecord rec;
        rec.pair_id = j.value("pair_id", "pair_" + std::to_string(records.size()));
        rec.label = j.value("label", "");
        rec.lux = j.at("lux");
        const auto output = fsid::read_raw(root / j.at("output").get<std::string>());
        const auto truth = fsid::read_raw(root / j.at("ground_truth").get<std::string>());
        rec.psnr_db = fsid::psnr(output, truth);
        rec.ssim_score = fsid::ssim(output, truth);
        records.push_back(std::move(rec));
    }
    const auto table = fsid::evaluate_set(records);
    const std::string csv = fsid::eval_table_to_csv(table);
    if (!out_path.empty()) write_text(out_path, csv);
    std::cout << csv;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fsidgen - synthetic clean/noisy Bayer RAW dataset pipeline"};
    app.require_subcommand(1);

    // generate
    uint64_t seed = 0;
    size_t count = 1;
    std::string config_path, out_path, band = "0.08:0.45", pattern = "RGGB";
    std::string camera = "camera", gain = "gain0", isp_path, profile_path;
    std::string gain_range = "0.25:4";
    double threshold = 0.1;
    int workers = 0;
    bool no_previews = false;

    auto* generate = app.add_subcommand("generate", "sample and render procedural scenes");
    generate->add_option("--seed", seed);
    generate->add_option("--count", count);
    generate->add_option("--config", config_path, "generator config JSON");
    generate->add_option("--out", out_path)->required();
    generate->add_flag("--no-previews", no_previews);

    auto* analyze = app.add_subcommand("analyze", "texture/color diversity gate");
    std::string in_path, report_path;
    analyze->add_option("--in", in_path)->required();
    analyze->add_option("--threshold", threshold);
    analyze->add_option("--band", band, "acceptance band low:high");
    analyze->add_option("--report", report_path);

    auto* calibrate = app.add_subcommand("calibrate", "fit a noise profile from a burst stack");
    calibrate->add_option("--burst", in_path)->required();
    calibrate->add_option("--camera", camera);
    calibrate->add_option("--gain", gain);
    calibrate->add_option("--out", out_path)->required();

    auto* unprocess = app.add_subcommand("unprocess", "RGB renders to clean Bayer RAW");
    unprocess->add_option("--in", in_path)->required();
    unprocess->add_option("--isp", isp_path, "ISP params JSON");
    unprocess->add_option("--pattern", pattern);
    unprocess->add_option("--out", out_path)->required();

    auto* inject = app.add_subcommand("inject", "add calibrated noise to clean RAW frames");
    inject->add_option("--in", in_path)->required();
    inject->add_option("--profile", profile_path)->required();
    inject->add_option("--gain-range", gain_range);
    inject->add_option("--seed", seed);
    inject->add_option("--out", out_path)->required();

    auto* build = app.add_subcommand("build-dataset", "end-to-end clean/noisy dataset build");
    build->add_option("--config", config_path)->required();
    build->add_option("--out", out_path)->required();
    build->add_option("--workers", workers);

    auto* verify = app.add_subcommand("verify", "re-validate a dataset manifest");
    std::string manifest_path;
    verify->add_option("manifest", manifest_path)->required();

    auto* evaluate = app.add_subcommand("evaluate", "PSNR/SSIM table grouped by lux");
    std::string pairs_path;
    evaluate->add_option("--pairs", pairs_path)->required();
    evaluate->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(seed, count, config_path, out_path, !no_previews);
        if (analyze->parsed()) return cmd_analyze(in_path, threshold, band, report_path);
        if (calibrate->parsed()) return cmd_calibrate(in_path, camera, gain, out_path);
        if (unprocess->parsed()) return cmd_unprocess(in_path, isp_path, pattern, out_path);
        if (inject->parsed()) return cmd_inject(in_path, profile_path, gain_range, seed, out_path);
        if (build->parsed()) return cmd_build(config_path, out_path, workers);
        if (verify->parsed()) return cmd_verify(manifest_path);
        if (evaluate->parsed()) return cmd_evaluate(pairs_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
