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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fsid/geometry.hpp"
#include "fsid/rng.hpp"

namespace fsid {

enum class Shape : uint8_t { Sphere, Box, Cylinder, PlanePatch, Torus };
constexpr std::array<Shape, 5> kAllShapes = {Shape::Sphere, Shape::Box, Shape::Cylinder,
                                             Shape::PlanePatch, Shape::Torus};

enum class TextureKind : uint8_t {
    Solid, Checker, Stripes, ValueNoise, MultiOctaveNoise, VoronoiCells, LinearGradient
};
constexpr std::array<TextureKind, 7> kAllTextureKinds = {
    TextureKind::Solid, TextureKind::Checker, TextureKind::Stripes, TextureKind::ValueNoise,
    TextureKind::MultiOctaveNoise, TextureKind::VoronoiCells, TextureKind::LinearGradient};

const char* to_string(Shape s);
const char* to_string(TextureKind k);
Shape shape_from_string(const std::string& s);
TextureKind texture_kind_from_string(const std::string& s);

struct Material {
    TextureKind kind = TextureKind::Solid;
    std::vector<Vec3> palette;     // 2..4 colors, components in [0,1]
    float spatial_scale = 1.0f;    // texels per world unit, > 0
    float roughness = 1.0f;        // 1 = fully diffuse, 0 = fully specular
    uint64_t texture_seed = 0;     // drives value-noise / voronoi feature points
};

/// Rotation is quantized to 20 angles per axis: index i -> i * 18 degrees.
constexpr int kRotationSteps = 20;

struct Transform {
    std::array<int, 3> rotation_index = {0, 0, 0};  // each in 0..19
    Vec3 translation;
    Vec3 scale = {1, 1, 1};
};

Mat3 rotation_matrix(const Transform& t);

struct ObjectInstance {
    Shape shape = Shape::Sphere;
    Material material;
    Transform transform;
};

enum class RoomFace : uint8_t { Floor, Ceiling, WallNorth, WallSouth, WallEast, WallWest };

struct BackgroundRegion {
    RoomFace face = RoomFace::Floor;
    Material material;
};

struct Light {
    enum class Type : uint8_t { Point, Ambient };
    Type type = Type::Point;
    Vec3 position;        // ignored for ambient
    float intensity = 1.0f;
    Vec3 color = {1, 1, 1};
};

struct CameraConfig {
    int width = 1920;
    int height = 1080;
    float fov_deg = 90.0f;  // horizontal
    Vec3 position;
    Vec3 look_at;
    Vec3 up = {0, 0, 1};
    float k1 = 0.0f;  // Brown-Conrady radial coefficients
    float k2 = 0.0f;
    int samples_per_pixel = 4;
};

struct SceneSpec {
    uint64_t scene_id = 0;
    uint64_t seed = 0;
    float room_half_extent = 4.0f;  // box room; z in [0, 2*extent]
    std::vector<ObjectInstance> objects;
    std::vector<BackgroundRegion> background;
    std::vector<Light> lights;
    CameraConfig camera;
};

std::string scene_to_json(const SceneSpec& spec);
SceneSpec scene_from_json(const std::string& json_text);

/// Asset pools and sampling ranges for sample_scene.
struct GeneratorConfig {
    std::vector<Shape> shape_pool{kAllShapes.begin(), kAllShapes.end()};
    std::vector<TextureKind> texture_pool{kAllTextureKinds.begin(), kAllTextureKinds.end()};
    int objects_min = 8;
    int objects_max = 24;
    float scale_min = 0.25f;
    float scale_max = 1.1f;
    int lights_min = 1;
    int lights_max = 3;
    float light_intensity_min = 0.5f;
    float light_intensity_max = 2.0f;
    float ambient_min = 0.05f;
    float ambient_max = 0.2f;
    float texture_scale_min = 0.8f;
    float texture_scale_max = 6.0f;
    int width = 1920;
    int height = 1080;
    float fov_deg = 90.0f;
    int samples_per_pixel = 4;
    bool randomize_distortion = false;
    float distortion_max = 0.15f;
    float room_half_extent = 4.0f;
    std::string version = "fsidgen-gencfg-1";
};

std::string generator_config_to_json(const GeneratorConfig& cfg);
GeneratorConfig generator_config_from_json(const std::string& json_text);

/// Draws one SceneSpec; all randomness comes from rng, so the spec is a pure
/// function of (seed, stream, config). Throws std::invalid_argument on empty
/// pools or objects_min > objects_max.
SceneSpec sample_scene(Rng rng, const GeneratorConfig& cfg);

}  // namespace fsid
