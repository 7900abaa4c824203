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

#include <set>

#include "fsid/diversity.hpp"
#include "fsid/render.hpp"
#include "fsid/rng.hpp"
#include "fsid/scene.hpp"

using namespace fsid;

namespace {

GeneratorConfig test_config() {
    GeneratorConfig cfg;
    cfg.width = 128;
    cfg.height = 128;
    return cfg;
}

Material solid_material(const Vec3& color) {
    Material m;
    m.kind = TextureKind::Solid;
    m.palette = {color};
    return m;
}

// Enclosed room with every face the same material, ambient light only.
SceneSpec flat_room_scene(const Vec3& color, float ambient_intensity) {
    SceneSpec spec;
    spec.room_half_extent = 4.0f;
    for (auto f : {RoomFace::Floor, RoomFace::Ceiling, RoomFace::WallNorth, RoomFace::WallSouth,
                   RoomFace::WallEast, RoomFace::WallWest})
        spec.background.push_back({f, solid_material(color)});
    Light ambient;
    ambient.type = Light::Type::Ambient;
    ambient.intensity = ambient_intensity;
    spec.lights.push_back(ambient);
    spec.camera.width = 64;
    spec.camera.height = 64;
    spec.camera.position = {0, -2.5f, 2.0f};
    spec.camera.look_at = {0, 0, 2.0f};
    return spec;
}

}  // namespace

TEST_CASE("same seed and config produce byte-identical scene specs") {
    const auto cfg = test_config();
    const auto a = sample_scene(Rng(99).derive("scene"), cfg);
    const auto b = sample_scene(Rng(99).derive("scene"), cfg);
    CHECK(scene_to_json(a) == scene_to_json(b));
}

TEST_CASE("single-entry pools with forced count yield the one possible scene") {
    GeneratorConfig cfg = test_config();
    cfg.shape_pool = {Shape::Box};
    cfg.texture_pool = {TextureKind::Solid};
    cfg.objects_min = cfg.objects_max = 1;
    const auto spec = sample_scene(Rng(1), cfg);
    REQUIRE(spec.objects.size() == 1);
    CHECK(spec.objects[0].shape == Shape::Box);
    CHECK(spec.objects[0].material.kind == TextureKind::Solid);
    for (const auto& bg : spec.background) CHECK(bg.material.kind == TextureKind::Solid);
}

TEST_CASE("empty pools are a configuration error") {
    GeneratorConfig cfg = test_config();
    cfg.shape_pool.clear();
    CHECK_THROWS_AS(sample_scene(Rng(1), cfg), std::invalid_argument);
    cfg = test_config();
    cfg.objects_min = 5;
    cfg.objects_max = 4;
    CHECK_THROWS_AS(sample_scene(Rng(1), cfg), std::invalid_argument);
}

TEST_CASE("1000 seeds give at least 999 pairwise-distinct specs") {
    const auto cfg = test_config();
    const Rng base(2024);
    std::set<uint64_t> hashes;
    for (uint64_t i = 0; i < 1000; i++) {
        const auto spec = sample_scene(base.derive("scene", i), cfg);
        const auto text = scene_to_json(spec);
        hashes.insert(fnv1a(text.data(), text.size()));
    }
    CHECK(hashes.size() >= 999);
}

TEST_CASE("scene spec json round-trips") {
    const auto spec = sample_scene(Rng(5).derive("scene"), test_config());
    const auto back = scene_from_json(scene_to_json(spec));
    CHECK(scene_to_json(back) == scene_to_json(spec));
}

TEST_CASE("flat ambient room renders to the wall color") {
    const Vec3 c{0.31f, 0.62f, 0.18f};
    const auto img = render(flat_room_scene(c, 1.0f));
    for (size_t i = 0; i < img.pixel_count(); i++) {
        CHECK(img.data[i * 3] == doctest::Approx(c.x).epsilon(1e-6));
        CHECK(img.data[i * 3 + 1] == doctest::Approx(c.y).epsilon(1e-6));
        CHECK(img.data[i * 3 + 2] == doctest::Approx(c.z).epsilon(1e-6));
    }
}

TEST_CASE("identical specs render bit-identically") {
    const auto spec = sample_scene(Rng(77).derive("scene"), test_config());
    const auto a = render(spec);
    const auto b = render(spec);
    CHECK(a.data == b.data);
}

TEST_CASE("fully black materials render to all-zero") {
    auto spec = sample_scene(Rng(3).derive("scene"), test_config());
    for (auto& o : spec.objects) o.material = solid_material({0, 0, 0});
    for (auto& b : spec.background) b.material = solid_material({0, 0, 0});
    const auto img = render(spec);
    for (float v : img.data) CHECK(v == 0.0f);
}

TEST_CASE("render output is clamped and finite on sampled scenes") {
    const Rng base(31);
    for (uint64_t i = 0; i < 3; i++) {
        auto cfg = test_config();
        cfg.width = cfg.height = 64;
        const auto img = render(sample_scene(base.derive("scene", i), cfg));
        for (float v : img.data) {
            CHECK(std::isfinite(v));
            CHECK(v >= 0.0f);
            CHECK(v <= 1.0f);
        }
    }
}

TEST_CASE("checker floor has strictly higher edge ratio than solid floor") {
    auto solid = flat_room_scene({0.5f, 0.5f, 0.5f}, 0.1f);
    Light point;
    point.type = Light::Type::Point;
    point.position = {0, 0, 3.5f};
    point.intensity = 1.5f;
    solid.lights.push_back(point);
    auto checker = solid;
    Material m;
    m.kind = TextureKind::Checker;
    m.palette = {{0.1f, 0.1f, 0.1f}, {0.9f, 0.9f, 0.9f}};
    m.spatial_scale = 2.0f;
    checker.background[0].material = m;  // floor

    const double ratio_solid = edge_ratio(render(solid), 0.1);
    const double ratio_checker = edge_ratio(render(checker), 0.1);
    CHECK(ratio_checker > ratio_solid);
}

TEST_CASE("distortion identity and fixed point") {
    std::vector<Point2> grid = {{0, 0}, {0.5f, 0.5f}, {0.6f, -0.8f}};
    const auto out = apply_distortion(grid, 0.0f, 0.0f);
    for (size_t i = 0; i < grid.size(); i++) {
        CHECK(out[i].x == grid[i].x);
        CHECK(out[i].y == grid[i].y);
    }
    // Center ray unchanged for any coefficients.
    const auto warped = apply_distortion({{0, 0}}, 0.3f, -0.1f);
    CHECK(warped[0].x == 0.0f);
    CHECK(warped[0].y == 0.0f);
}

TEST_CASE("distortion scales the corner per the radial formula") {
    // r = 1 at (1, 0); k1 = 0.1, k2 = 0 -> r' = 1.1.
    const auto out = apply_distortion({{1.0f, 0.0f}}, 0.1f, 0.0f);
    CHECK(out[0].x == doctest::Approx(1.1f));
    CHECK(out[0].y == 0.0f);
}

TEST_CASE("non-monotone distortion is rejected") {
    CHECK_THROWS_AS(apply_distortion({{0.5f, 0.5f}}, -0.45f, 0.0f), std::invalid_argument);
    CHECK_THROWS_AS(apply_distortion({{0.5f, 0.5f}}, 0.6f, 0.0f), std::invalid_argument);
}

TEST_CASE("composition coverage over 10000 scenes hits every pool entry") {
    const auto cfg = test_config();
    const Rng base(11);
    std::set<Shape> shapes;
    std::set<TextureKind> textures;
    std::array<std::set<int>, 3> angles;
    for (uint64_t i = 0; i < 10000 && (shapes.size() < 5 || textures.size() < 7 ||
                                       angles[0].size() < 20 || angles[1].size() < 20 ||
                                       angles[2].size() < 20);
         i++) {
        const auto spec = sample_scene(base.derive("scene", i), cfg);
        for (const auto& o : spec.objects) {
            shapes.insert(o.shape);
            textures.insert(o.material.kind);
            for (int a = 0; a < 3; a++) angles[a].insert(o.transform.rotation_index[a]);
        }
    }
    CHECK(shapes.size() == 5);
    CHECK(textures.size() == 7);
    for (int a = 0; a < 3; a++) CHECK(angles[a].size() == 20);
}
