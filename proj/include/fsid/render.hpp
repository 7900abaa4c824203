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

#include <vector>

#include "fsid/image.hpp"
#include "fsid/scene.hpp"

namespace fsid {

/// Brown-Conrady radial distortion of normalized image coordinates
/// (r measured so the frame corner sits at r = 1):
///   r' = r * (1 + k1*r^2 + k2*r^4)
/// Identity when k1 = k2 = 0. Throws std::invalid_argument when r' is not
/// strictly monotone over r in [0, 1].
struct Point2 {
    float x = 0, y = 0;
};
std::vector<Point2> apply_distortion(const std::vector<Point2>& grid, float k1, float k2);

/// Deterministic ray-cast render: Lambertian + Blinn-Phong shading, hard
/// shadows from point lights, fixed 2x2 supersampling grid when
/// samples_per_pixel >= 4. Output is linear light, clamped to [0,1].
RgbImage render(const SceneSpec& spec);

/// Procedural texture evaluation, exposed for tests.
Vec3 evaluate_texture(const Material& m, const Vec3& local_point);

}  // namespace fsid
