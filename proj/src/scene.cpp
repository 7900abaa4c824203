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

#include "fsid/scene.hpp"

#include <json.hpp>

#include <numbers>
#include <stdexcept>

namespace fsid {

using nlohmann::json;

const char* to_string(Shape s) {
    switch (s) {
        case Shape::Sphere: return "sphere";
        case Shape::Box: return "box";
        case Shape::Cylinder: return "cylinder";
        case Shape::PlanePatch: return "plane-patch";
        case Shape::Torus: return "torus";
    }
    return "?";
}

const char* to_string(TextureKind k) {
    switch (k) {
        case TextureKind::Solid: return "solid";
        case TextureKind::Checker: return "checker";
        case TextureKind::Stripes: return "stripes";
        case TextureKind::ValueNoise: return "value-noise";
        case TextureKind::MultiOctaveNoise: return "multi-octave-noise";
        case TextureKind::VoronoiCells: return "voronoi-cells";
        case TextureKind::LinearGradient: return "linear-gradient";
    }
    return "?";
}

Shape shape_from_string(const std::string& s) {
    for (Shape sh : kAllShapes)
        if (s == to_string(sh)) return sh;
    throw std::invalid_argument("unknown shape: " + s);
}

TextureKind texture_kind_from_string(const std::string& s) {
    for (TextureKind k : kAllTextureKinds)
        if (s == to_string(k)) return k;
    throw std::invalid_argument("unknown texture kind: " + s);
}

Mat3 rotation_matrix(const Transform& t) {
    constexpr float step = 2.0f * std::numbers::pi_v<float> / kRotationSteps;
    return rotation_z(t.rotation_index[2] * step) * rotation_y(t.rotation_index[1] * step) *
           rotation_x(t.rotation_index[0] * step);
}

namespace {

const char* to_string(RoomFace f) {
    switch (f) {
        case RoomFace::Floor: return "floor";
        case RoomFace::Ceiling: return "ceiling";
        case RoomFace::WallNorth: return "wall-north";
        case RoomFace::WallSouth: return "wall-south";
        case RoomFace::WallEast: return "wall-east";
        case RoomFace::WallWest: return "wall-west";
    }
    return "?";
}

RoomFace room_face_from_string(const std::string& s) {
    for (auto f : {RoomFace::Floor, RoomFace::Ceiling, RoomFace::WallNorth, RoomFace::WallSouth,
                   RoomFace::WallEast, RoomFace::WallWest})
        if (s == to_string(f)) return f;
    throw std::invalid_argument("unknown room face: " + s);
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }
Vec3 vec_from_json(const json& j) { return {j.at(0), j.at(1), j.at(2)}; }

json material_to_json(const Material& m) {
    json pal = json::array();
    for (const auto& c : m.palette) pal.push_back(vec_to_json(c));
    return {{"kind", to_string(m.kind)},
            {"palette", pal},
            {"spatial_scale", m.spatial_scale},
            {"roughness", m.roughness},
            {"texture_seed", m.texture_seed}};
}

Material material_from_json(const json& j) {
    Material m;
    m.kind = texture_kind_from_string(j.at("kind"));
    for (const auto& c : j.at("palette")) m.palette.push_back(vec_from_json(c));
    m.spatial_scale = j.at("spatial_scale");
    m.roughness = j.at("roughness");
    m.texture_seed = j.at("texture_seed");
    return m;
}

}  // namespace

std::string scene_to_json(const SceneSpec& spec) {
    json j;
    j["schema"] = "fsidgen-scene-1";
    j["scene_id"] = spec.scene_id;
    j["seed"] = spec.seed;
    j["room_half_extent"] = spec.room_half_extent;

    json objs = json::array();
    for (const auto& o : spec.objects) {
        objs.push_back({{"shape", to_string(o.shape)},
                        {"material", material_to_json(o.material)},
                        {"rotation_index", o.transform.rotation_index},
                        {"translation", vec_to_json(o.transform.translation)},
                        {"scale", vec_to_json(o.transform.scale)}});
    }
    j["objects"] = objs;

    json bg = json::array();
    for (const auto& b : spec.background)
        bg.push_back({{"face", to_string(b.face)}, {"material", material_to_json(b.material)}});
    j["background"] = bg;

    json lights = json::array();
    for (const auto& l : spec.lights) {
        lights.push_back({{"type", l.type == Light::Type::Point ? "point" : "ambient"},
                          {"position", vec_to_json(l.position)},
                          {"intensity", l.intensity},
                          {"color", vec_to_json(l.color)}});
    }
    j["lights"] = lights;

    const auto& c = spec.camera;
    j["camera"] = {{"width", c.width},     {"height", c.height},
                   {"fov_deg", c.fov_deg}, {"position", vec_to_json(c.position)},
                   {"look_at", vec_to_json(c.look_at)}, {"up", vec_to_json(c.up)},
                   {"k1", c.k1},           {"k2", c.k2},
                   {"samples_per_pixel", c.samples_per_pixel}};
    return j.dump(2);
}

SceneSpec scene_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("schema") != "fsidgen-scene-1")
        throw std::invalid_argument("unsupported scene schema");
    SceneSpec spec;
    spec.scene_id = j.at("scene_id");
    spec.seed = j.at("seed");
    spec.room_half_extent = j.at("room_half_extent");
    for (const auto& o : j.at("objects")) {
        ObjectInstance inst;
        inst.shape = shape_from_string(o.at("shape"));
        inst.material = material_from_json(o.at("material"));
        inst.transform.rotation_index = o.at("rotation_index");
        inst.transform.translation = vec_from_json(o.at("translation"));
        inst.transform.scale = vec_from_json(o.at("scale"));
        spec.objects.push_back(std::move(inst));
    }
    for (const auto& b : j.at("background")) {
        spec.background.push_back(
            {room_face_from_string(b.at("face")), material_from_json(b.at("material"))});
    }
    for (const auto& l : j.at("lights")) {
        Light light;
        light.type = l.at("type") == "point" ? Light::Type::Point : Light::Type::Ambient;
        light.position = vec_from_json(l.at("position"));
        light.intensity = l.at("intensity");
        light.color = vec_from_json(l.at("color"));
        spec.lights.push_back(light);
    }
    const auto& c = j.at("camera");
    spec.camera.width = c.at("width");
    spec.camera.height = c.at("height");
    spec.camera.fov_deg = c.at("fov_deg");
    spec.camera.position = vec_from_json(c.at("position"));
    spec.camera.look_at = vec_from_json(c.at("look_at"));
    spec.camera.up = vec_from_json(c.at("up"));
    spec.camera.k1 = c.at("k1");
    spec.camera.k2 = c.at("k2");
    spec.camera.samples_per_pixel = c.at("samples_per_pixel");
    return spec;
}

std::string generator_config_to_json(const GeneratorConfig& cfg) {
    json shapes = json::array();
    for (Shape s : cfg.shape_pool) shapes.push_back(to_string(s));
    json textures = json::array();
    for (TextureKind k : cfg.texture_pool) textures.push_back(to_string(k));
    json j = {{"version", cfg.version},
              {"shape_pool", shapes},
              {"texture_pool", textures},
              {"objects_min", cfg.objects_min},
              {"objects_max", cfg.objects_max},
              {"scale_min", cfg.scale_min},
              {"scale_max", cfg.scale_max},
              {"lights_min", cfg.lights_min},
              {"lights_max", cfg.lights_max},
              {"light_intensity_min", cfg.light_intensity_min},
              {"light_intensity_max", cfg.light_intensity_max},
              {"ambient_min", cfg.ambient_min},
              {"ambient_max", cfg.ambient_max},
              {"texture_scale_min", cfg.texture_scale_min},
              {"texture_scale_max", cfg.texture_scale_max},
              {"width", cfg.width},
              {"height", cfg.height},
              {"fov_deg", cfg.fov_deg},
              {"samples_per_pixel", cfg.samples_per_pixel},
              {"randomize_distortion", cfg.randomize_distortion},
              {"distortion_max", cfg.distortion_max},
              {"room_half_extent", cfg.room_half_extent}};
    return j.dump(2);
}

GeneratorConfig generator_config_from_json(const std::string& text) {
    const json j = json::parse(text);
    GeneratorConfig cfg;
    cfg.version = j.value("version", cfg.version);
    if (j.contains("shape_pool")) {
        cfg.shape_pool.clear();
        for (const auto& s : j.at("shape_pool")) cfg.shape_pool.push_back(shape_from_string(s));
    }
    if (j.contains("texture_pool")) {
        cfg.texture_pool.clear();
        for (const auto& t : j.at("texture_pool"))
            cfg.texture_pool.push_back(texture_kind_from_string(t));
    }
    cfg.objects_min = j.value("objects_min", cfg.objects_min);
    cfg.objects_max = j.value("objects_max", cfg.objects_max);
    cfg.scale_min = j.value("scale_min", cfg.scale_min);
    cfg.scale_max = j.value("scale_max", cfg.scale_max);
    cfg.lights_min = j.value("lights_min", cfg.lights_min);
    cfg.lights_max = j.value("lights_max", cfg.lights_max);
    cfg.light_intensity_min = j.value("light_intensity_min", cfg.light_intensity_min);
    cfg.light_intensity_max = j.value("light_intensity_max", cfg.light_intensity_max);
    cfg.ambient_min = j.value("ambient_min", cfg.ambient_min);
    cfg.ambient_max = j.value("ambient_max", cfg.ambient_max);
    cfg.texture_scale_min = j.value("texture_scale_min", cfg.texture_scale_min);
    cfg.texture_scale_max = j.value("texture_scale_max", cfg.texture_scale_max);
    cfg.width = j.value("width", cfg.width);
    cfg.height = j.value("height", cfg.height);
    cfg.fov_deg = j.value("fov_deg", cfg.fov_deg);
    cfg.samples_per_pixel = j.value("samples_per_pixel", cfg.samples_per_pixel);
    cfg.randomize_distortion = j.value("randomize_distortion", cfg.randomize_distortion);
    cfg.distortion_max = j.value("distortion_max", cfg.distortion_max);
    cfg.room_half_extent = j.value("room_half_extent", cfg.room_half_extent);
    return cfg;
}

namespace {

Material sample_material(Rng& rng, const GeneratorConfig& cfg) {
    Material m;
    m.kind = cfg.texture_pool[static_cast<size_t>(
        rng.uniform_int(0, static_cast<int64_t>(cfg.texture_pool.size()) - 1))];
    const int ncolors = static_cast<int>(rng.uniform_int(2, 4));
    for (int i = 0; i < ncolors; i++) {
        m.palette.push_back({static_cast<float>(rng.uniform(0.05, 0.95)),
                             static_cast<float>(rng.uniform(0.05, 0.95)),
                             static_cast<float>(rng.uniform(0.05, 0.95))});
    }
    m.spatial_scale = static_cast<float>(rng.log_uniform(cfg.texture_scale_min, cfg.texture_scale_max));
    m.roughness = static_cast<float>(rng.uniform(0.3, 1.0));
    m.texture_seed = rng.next_u64();
    return m;
}

}  // namespace

SceneSpec sample_scene(Rng rng, const GeneratorConfig& cfg) {
    if (cfg.shape_pool.empty() || cfg.texture_pool.empty())
        throw std::invalid_argument("sample_scene: empty asset pool");
    if (cfg.objects_min > cfg.objects_max || cfg.objects_min < 1)
        throw std::invalid_argument("sample_scene: bad object count range");

    SceneSpec spec;
    spec.seed = rng.seed();
    spec.scene_id = rng.stream_id();
    spec.room_half_extent = cfg.room_half_extent;
    const float E = cfg.room_half_extent;  // room: x,y in [-E,E], z in [0,E]

    Rng obj_rng = rng.derive("objects");
    const int n = static_cast<int>(obj_rng.uniform_int(cfg.objects_min, cfg.objects_max));
    for (int i = 0; i < n; i++) {
        ObjectInstance inst;
        inst.shape = cfg.shape_pool[static_cast<size_t>(
            obj_rng.uniform_int(0, static_cast<int64_t>(cfg.shape_pool.size()) - 1))];
        inst.material = sample_material(obj_rng, cfg);
        for (int a = 0; a < 3; a++)
            inst.transform.rotation_index[a] =
                static_cast<int>(obj_rng.uniform_int(0, kRotationSteps - 1));
        inst.transform.translation = {static_cast<float>(obj_rng.uniform(-0.55 * E, 0.55 * E)),
                                      static_cast<float>(obj_rng.uniform(-0.55 * E, 0.55 * E)),
                                      static_cast<float>(obj_rng.uniform(0.15 * E, 0.75 * E))};
        inst.transform.scale = {static_cast<float>(obj_rng.log_uniform(cfg.scale_min, cfg.scale_max)),
                                static_cast<float>(obj_rng.log_uniform(cfg.scale_min, cfg.scale_max)),
                                static_cast<float>(obj_rng.log_uniform(cfg.scale_min, cfg.scale_max))};
        spec.objects.push_back(std::move(inst));
    }

    Rng bg_rng = rng.derive("background");
    for (auto f : {RoomFace::Floor, RoomFace::Ceiling, RoomFace::WallNorth, RoomFace::WallSouth,
                   RoomFace::WallEast, RoomFace::WallWest})
        spec.background.push_back({f, sample_material(bg_rng, cfg)});

    Rng light_rng = rng.derive("lights");
    const int nlights = static_cast<int>(light_rng.uniform_int(cfg.lights_min, cfg.lights_max));
    for (int i = 0; i < nlights; i++) {
        Light l;
        l.type = Light::Type::Point;
        l.position = {static_cast<float>(light_rng.uniform(-0.7 * E, 0.7 * E)),
                      static_cast<float>(light_rng.uniform(-0.7 * E, 0.7 * E)),
                      static_cast<float>(light_rng.uniform(0.6 * E, 0.95 * E))};
        l.intensity =
            static_cast<float>(light_rng.uniform(cfg.light_intensity_min, cfg.light_intensity_max));
        l.color = {static_cast<float>(light_rng.uniform(0.85, 1.0)),
                   static_cast<float>(light_rng.uniform(0.85, 1.0)),
                   static_cast<float>(light_rng.uniform(0.85, 1.0))};
        spec.lights.push_back(l);
    }
    Light ambient;
    ambient.type = Light::Type::Ambient;
    ambient.intensity = static_cast<float>(light_rng.uniform(cfg.ambient_min, cfg.ambient_max));
    spec.lights.push_back(ambient);

    Rng cam_rng = rng.derive("camera");
    spec.camera.width = cfg.width;
    spec.camera.height = cfg.height;
    spec.camera.fov_deg = cfg.fov_deg;
    spec.camera.samples_per_pixel = cfg.samples_per_pixel;
    const float azimuth = static_cast<float>(cam_rng.uniform(0.0, 2.0 * std::numbers::pi));
    const float radius = 0.72f * E;
    spec.camera.position = {radius * std::cos(azimuth), radius * std::sin(azimuth),
                            static_cast<float>(cam_rng.uniform(0.35 * E, 0.6 * E))};
    spec.camera.look_at = {static_cast<float>(cam_rng.uniform(-0.15 * E, 0.15 * E)),
                           static_cast<float>(cam_rng.uniform(-0.15 * E, 0.15 * E)),
                           static_cast<float>(cam_rng.uniform(0.2 * E, 0.4 * E))};
    if (cfg.randomize_distortion) {
        spec.camera.k1 = static_cast<float>(cam_rng.uniform(-cfg.distortion_max, cfg.distortion_max));
        spec.camera.k2 = static_cast<float>(cam_rng.uniform(-cfg.distortion_max / 4, cfg.distortion_max / 4));
    }
    return spec;
}

}  // namespace fsid
