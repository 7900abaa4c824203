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

#include "fsid/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace fsid {

namespace {

// ---------------------------------------------------------------------------
// Procedural textures
// ---------------------------------------------------------------------------

inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline float lattice_hash(int64_t ix, int64_t iy, int64_t iz, uint64_t seed) {
    uint64_t h = seed;
    h = mix64(h ^ static_cast<uint64_t>(ix) * 0x9E3779B97F4A7C15ull);
    h = mix64(h ^ static_cast<uint64_t>(iy) * 0xC2B2AE3D27D4EB4Full);
    h = mix64(h ^ static_cast<uint64_t>(iz) * 0x165667B19E3779F9ull);
    return static_cast<float>(h >> 40) * 0x1.0p-24f;
}

inline float smooth(float t) { return t * t * (3.0f - 2.0f * t); }

float value_noise(const Vec3& p, uint64_t seed) {
    const float fx = std::floor(p.x), fy = std::floor(p.y), fz = std::floor(p.z);
    const auto ix = static_cast<int64_t>(fx), iy = static_cast<int64_t>(fy),
               iz = static_cast<int64_t>(fz);
    const float tx = smooth(p.x - fx), ty = smooth(p.y - fy), tz = smooth(p.z - fz);
    float corners[2][2][2];
    for (int dz = 0; dz < 2; dz++)
        for (int dy = 0; dy < 2; dy++)
            for (int dx = 0; dx < 2; dx++)
                corners[dz][dy][dx] = lattice_hash(ix + dx, iy + dy, iz + dz, seed);
    auto lerp = [](float a, float b, float t) { return a + (b - a) * t; };
    const float x00 = lerp(corners[0][0][0], corners[0][0][1], tx);
    const float x01 = lerp(corners[0][1][0], corners[0][1][1], tx);
    const float x10 = lerp(corners[1][0][0], corners[1][0][1], tx);
    const float x11 = lerp(corners[1][1][0], corners[1][1][1], tx);
    return lerp(lerp(x00, x01, ty), lerp(x10, x11, ty), tz);
}

float fbm(const Vec3& p, uint64_t seed) {
    float sum = 0, amp = 0.5f, freq = 1.0f, norm = 0;
    for (int o = 0; o < 4; o++) {
        sum += amp * value_noise(p * freq, seed + o);
        norm += amp;
        amp *= 0.5f;
        freq *= 2.0f;
    }
    return sum / norm;
}

// Piecewise-linear interpolation across the palette at t in [0,1].
Vec3 palette_gradient(const std::vector<Vec3>& palette, float t) {
    if (palette.size() == 1) return palette[0];
    t = std::clamp(t, 0.0f, 1.0f) * static_cast<float>(palette.size() - 1);
    const auto i = std::min(static_cast<size_t>(t), palette.size() - 2);
    const float f = t - static_cast<float>(i);
    return palette[i] * (1.0f - f) + palette[i + 1] * f;
}

Vec3 voronoi_color(const Vec3& p, const Material& m) {
    const int64_t cx = static_cast<int64_t>(std::floor(p.x));
    const int64_t cy = static_cast<int64_t>(std::floor(p.y));
    const int64_t cz = static_cast<int64_t>(std::floor(p.z));
    float best = std::numeric_limits<float>::max();
    uint64_t best_cell = 0;
    for (int64_t dz = -1; dz <= 1; dz++)
        for (int64_t dy = -1; dy <= 1; dy++)
            for (int64_t dx = -1; dx <= 1; dx++) {
                const int64_t gx = cx + dx, gy = cy + dy, gz = cz + dz;
                // One feature point per cell.
                const Vec3 feature = {
                    static_cast<float>(gx) + lattice_hash(gx, gy, gz, m.texture_seed ^ 1),
                    static_cast<float>(gy) + lattice_hash(gx, gy, gz, m.texture_seed ^ 2),
                    static_cast<float>(gz) + lattice_hash(gx, gy, gz, m.texture_seed ^ 3)};
                const Vec3 d = p - feature;
                const float dist = dot(d, d);
                if (dist < best) {
                    best = dist;
                    best_cell = mix64(m.texture_seed ^ (static_cast<uint64_t>(gx) * 73856093ull) ^
                                      (static_cast<uint64_t>(gy) * 19349663ull) ^
                                      (static_cast<uint64_t>(gz) * 83492791ull));
                }
            }
    return m.palette[best_cell % m.palette.size()];
}

}  // namespace

Vec3 evaluate_texture(const Material& m, const Vec3& local_point) {
    if (m.palette.empty()) return {0, 0, 0};
    const Vec3 p = local_point * m.spatial_scale;
    switch (m.kind) {
        case TextureKind::Solid:
            return m.palette[0];
        case TextureKind::Checker: {
            const int64_t s = static_cast<int64_t>(std::floor(p.x)) +
                              static_cast<int64_t>(std::floor(p.y)) +
                              static_cast<int64_t>(std::floor(p.z));
            return m.palette[((s % 2) + 2) % 2 % m.palette.size()];
        }
        case TextureKind::Stripes: {
            const int64_t s = static_cast<int64_t>(std::floor(p.x + p.z * 0.25f));
            const auto n = static_cast<int64_t>(m.palette.size());
            return m.palette[static_cast<size_t>(((s % n) + n) % n)];
        }
        case TextureKind::ValueNoise:
            return palette_gradient(m.palette, value_noise(p, m.texture_seed));
        case TextureKind::MultiOctaveNoise:
            return palette_gradient(m.palette, fbm(p, m.texture_seed));
        case TextureKind::VoronoiCells:
            return voronoi_color(p, m);
        case TextureKind::LinearGradient: {
            const float g = p.x * 0.5f + p.y * 0.35f + p.z * 0.15f;
            return palette_gradient(m.palette, g - std::floor(g));
        }
    }
    return m.palette[0];
}

// ---------------------------------------------------------------------------
// Distortion
// ---------------------------------------------------------------------------

std::vector<Point2> apply_distortion(const std::vector<Point2>& grid, float k1, float k2) {
    if (std::abs(k1) > 0.5f || std::abs(k2) > 0.5f)
        throw std::invalid_argument("distortion coefficients out of range");
    // dr'/dr = 1 + 3 k1 r^2 + 5 k2 r^4 must stay positive over the frame.
    for (float r = 0.0f; r <= 1.0f; r += 1.0f / 64.0f) {
        const float r2 = r * r;
        if (1.0f + 3.0f * k1 * r2 + 5.0f * k2 * r2 * r2 <= 0.0f)
            throw std::invalid_argument("non-monotone radial distortion within frame");
    }
    std::vector<Point2> out;
    out.reserve(grid.size());
    for (const auto& p : grid) {
        const float r2 = p.x * p.x + p.y * p.y;
        const float f = 1.0f + k1 * r2 + k2 * r2 * r2;
        out.push_back({p.x * f, p.y * f});
    }
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// Root solvers (torus needs a quartic)
// ---------------------------------------------------------------------------

// Largest real root of t^3 + a t^2 + b t + c.
double cubic_max_real_root(double a, double b, double c) {
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double off = -a / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc >= 0) {
        const double s = std::sqrt(disc);
        return std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) + off;
    }
    // Three real roots.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double theta = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
    double best = -std::numeric_limits<double>::max();
    for (int k = 0; k < 3; k++)
        best = std::max(best, m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) + off);
    return best;
}

// Real roots of x^4 + a x^3 + b x^2 + c x + d (Ferrari + Newton polish).
int solve_quartic(double a, double b, double c, double d, double roots[4]) {
    const double p = b - 3.0 * a * a / 8.0;
    const double q = c - a * b / 2.0 + a * a * a / 8.0;
    const double r = d - a * c / 4.0 + a * a * b / 16.0 - 3.0 * a * a * a * a / 256.0;
    const double off = -a / 4.0;
    int n = 0;

    if (std::abs(q) < 1e-12) {
        // Biquadratic.
        const double disc = p * p - 4.0 * r;
        if (disc < 0) return 0;
        const double s = std::sqrt(disc);
        for (double y2 : {(-p + s) / 2.0, (-p - s) / 2.0}) {
            if (y2 < 0) continue;
            const double y = std::sqrt(y2);
            roots[n++] = y + off;
            roots[n++] = -y + off;
        }
    } else {
        // 8m^3 + 8pm^2 + (2p^2 - 8r)m - q^2 = 0 has a positive root.
        const double m = cubic_max_real_root(p, p * p / 4.0 - r, -q * q / 8.0);
        if (m <= 0) return 0;
        const double s = std::sqrt(2.0 * m);
        const double t0 = p / 2.0 + m;
        // (y^2 + s y + t0 - q/(2s)) (y^2 - s y + t0 + q/(2s))
        for (int half = 0; half < 2; half++) {
            const double bq = half == 0 ? s : -s;
            const double cq = half == 0 ? t0 - q / (2.0 * s) : t0 + q / (2.0 * s);
            const double disc = bq * bq - 4.0 * cq;
            if (disc < 0) continue;
            const double sd = std::sqrt(disc);
            roots[n++] = (-bq + sd) / 2.0 + off;
            roots[n++] = (-bq - sd) / 2.0 + off;
        }
    }
    // Newton polish.
    for (int i = 0; i < n; i++) {
        double x = roots[i];
        for (int it = 0; it < 2; it++) {
            const double f = (((x + a) * x + b) * x + c) * x + d;
            const double fp = ((4.0 * x + 3.0 * a) * x + 2.0 * b) * x + c;
            if (std::abs(fp) > 1e-12) x -= f / fp;
        }
        roots[i] = x;
    }
    return n;
}

// ---------------------------------------------------------------------------
// Primitive intersections in object-local space
// ---------------------------------------------------------------------------

struct LocalHit {
    float t = 0;
    Vec3 point;   // local
    Vec3 normal;  // local
};

constexpr float kTorusMinor = 0.35f;

std::optional<LocalHit> intersect_unit_sphere(const Vec3& o, const Vec3& d, float t_max) {
    const float A = dot(d, d), B = 2.0f * dot(o, d), C = dot(o, o) - 1.0f;
    const float disc = B * B - 4 * A * C;
    if (disc < 0) return std::nullopt;
    const float s = std::sqrt(disc);
    for (float t : {(-B - s) / (2 * A), (-B + s) / (2 * A)}) {
        if (t > 1e-4f && t < t_max) {
            const Vec3 p = o + d * t;
            return LocalHit{t, p, p};
        }
    }
    return std::nullopt;
}

std::optional<LocalHit> intersect_unit_box(const Vec3& o, const Vec3& d, float t_max) {
    float t0 = -std::numeric_limits<float>::max(), t1 = std::numeric_limits<float>::max();
    int axis0 = -1;
    const float ov[3] = {o.x, o.y, o.z}, dv[3] = {d.x, d.y, d.z};
    for (int a = 0; a < 3; a++) {
        if (std::abs(dv[a]) < 1e-9f) {
            if (std::abs(ov[a]) > 1.0f) return std::nullopt;
            continue;
        }
        float ta = (-1.0f - ov[a]) / dv[a];
        float tb = (1.0f - ov[a]) / dv[a];
        if (ta > tb) std::swap(ta, tb);
        if (ta > t0) { t0 = ta; axis0 = a; }
        t1 = std::min(t1, tb);
        if (t0 > t1) return std::nullopt;
    }
    float t = t0;
    bool entering = true;
    if (t <= 1e-4f) { t = t1; entering = false; }
    if (t <= 1e-4f || t >= t_max || axis0 < 0) return std::nullopt;
    const Vec3 p = o + d * t;
    Vec3 n{0, 0, 0};
    if (entering) {
        if (axis0 == 0) n.x = ov[0] > 0 ? 1.0f : -1.0f;
        else if (axis0 == 1) n.y = ov[1] > 0 ? 1.0f : -1.0f;
        else n.z = ov[2] > 0 ? 1.0f : -1.0f;
    } else {
        // Exiting face: dominant coordinate of the hit point.
        const float ax = std::abs(p.x), ay = std::abs(p.y), az = std::abs(p.z);
        if (ax >= ay && ax >= az) n.x = p.x > 0 ? 1.0f : -1.0f;
        else if (ay >= az) n.y = p.y > 0 ? 1.0f : -1.0f;
        else n.z = p.z > 0 ? 1.0f : -1.0f;
    }
    return LocalHit{t, p, n};
}

std::optional<LocalHit> intersect_unit_cylinder(const Vec3& o, const Vec3& d, float t_max) {
    std::optional<LocalHit> best;
    auto consider = [&](float t, const Vec3& n) {
        if (t > 1e-4f && t < t_max && (!best || t < best->t)) best = LocalHit{t, o + d * t, n};
    };
    // Side wall.
    const float A = d.x * d.x + d.y * d.y;
    if (A > 1e-12f) {
        const float B = 2.0f * (o.x * d.x + o.y * d.y);
        const float C = o.x * o.x + o.y * o.y - 1.0f;
        const float disc = B * B - 4 * A * C;
        if (disc >= 0) {
            const float s = std::sqrt(disc);
            for (float t : {(-B - s) / (2 * A), (-B + s) / (2 * A)}) {
                const Vec3 p = o + d * t;
                if (std::abs(p.z) <= 1.0f) consider(t, {p.x, p.y, 0});
            }
        }
    }
    // Caps.
    if (std::abs(d.z) > 1e-9f) {
        for (float zc : {1.0f, -1.0f}) {
            const float t = (zc - o.z) / d.z;
            const Vec3 p = o + d * t;
            if (p.x * p.x + p.y * p.y <= 1.0f) consider(t, {0, 0, zc});
        }
    }
    return best;
}

std::optional<LocalHit> intersect_plane_patch(const Vec3& o, const Vec3& d, float t_max) {
    if (std::abs(d.z) < 1e-9f) return std::nullopt;
    const float t = -o.z / d.z;
    if (t <= 1e-4f || t >= t_max) return std::nullopt;
    const Vec3 p = o + d * t;
    if (std::abs(p.x) > 1.0f || std::abs(p.y) > 1.0f) return std::nullopt;
    // Two-sided.
    const Vec3 n = o.z > 0 ? Vec3{0, 0, 1} : Vec3{0, 0, -1};
    return LocalHit{t, p, n};
}

std::optional<LocalHit> intersect_torus(const Vec3& o, const Vec3& d, float t_max) {
    const double R = 1.0, r = kTorusMinor;
    const double m = dot(d, d);
    const double n = dot(o, d);
    const double e0 = dot(o, o);
    const double k = e0 + R * R - r * r;
    const double dxy = double(d.x) * d.x + double(d.y) * d.y;
    const double oxy = double(o.x) * o.x + double(o.y) * o.y;
    const double odxy = double(o.x) * d.x + double(o.y) * d.y;

    const double A4 = m * m;
    const double a = 4.0 * m * n / A4;
    const double b = (4.0 * n * n + 2.0 * m * k - 4.0 * R * R * dxy) / A4;
    const double c = (4.0 * n * k - 8.0 * R * R * odxy) / A4;
    const double dd = (k * k - 4.0 * R * R * oxy) / A4;

    double roots[4];
    const int cnt = solve_quartic(a, b, c, dd, roots);
    float best = t_max;
    bool found = false;
    for (int i = 0; i < cnt; i++) {
        const auto t = static_cast<float>(roots[i]);
        if (t > 1e-3f && t < best) { best = t; found = true; }
    }
    if (!found) return std::nullopt;
    const Vec3 p = o + d * best;
    const float k1 = dot(p, p) + static_cast<float>(R * R - r * r);
    Vec3 nrm = {p.x * (k1 - 2.0f * static_cast<float>(R * R)),
                p.y * (k1 - 2.0f * static_cast<float>(R * R)), p.z * k1};
    return LocalHit{best, p, nrm};
}

std::optional<LocalHit> intersect_local(Shape shape, const Vec3& o, const Vec3& d, float t_max) {
    switch (shape) {
        case Shape::Sphere: return intersect_unit_sphere(o, d, t_max);
        case Shape::Box: return intersect_unit_box(o, d, t_max);
        case Shape::Cylinder: return intersect_unit_cylinder(o, d, t_max);
        case Shape::PlanePatch: return intersect_plane_patch(o, d, t_max);
        case Shape::Torus: return intersect_torus(o, d, t_max);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Scene precompute and tracing
// ---------------------------------------------------------------------------

struct PreparedObject {
    const ObjectInstance* inst = nullptr;
    Mat3 to_local;       // (R * S)^-1
    Mat3 normal_matrix;  // (R * S)^-T
    Vec3 translation;
    float bound_radius = 0;  // world-space bounding sphere around translation
};

struct Hit {
    float t = std::numeric_limits<float>::max();
    Vec3 point;        // world
    Vec3 normal;       // world, unit, facing the ray origin side
    Vec3 local_point;  // texture coordinates
    const Material* material = nullptr;
};

struct PreparedScene {
    const SceneSpec* spec;
    std::vector<PreparedObject> objects;
    float room = 4.0f;       // |x|,|y| <= room, 0 <= z <= room
    float ambient = 0.0f;
    Vec3 ambient_color = {0, 0, 0};
};

PreparedScene prepare(const SceneSpec& spec) {
    PreparedScene ps;
    ps.spec = &spec;
    ps.room = spec.room_half_extent;
    for (const auto& obj : spec.objects) {
        PreparedObject po;
        po.inst = &obj;
        const Mat3 rot = rotation_matrix(obj.transform);
        Mat3 scale = Mat3::identity();
        scale.m[0][0] = obj.transform.scale.x;
        scale.m[1][1] = obj.transform.scale.y;
        scale.m[2][2] = obj.transform.scale.z;
        const Mat3 linear = rot * scale;
        po.to_local = inverse(linear);
        po.normal_matrix = po.to_local.transposed();
        po.translation = obj.transform.translation;
        const float smax = std::max({obj.transform.scale.x, obj.transform.scale.y,
                                     obj.transform.scale.z});
        po.bound_radius = smax * 1.8f;  // unit primitives fit in radius sqrt(3)
        ps.objects.push_back(po);
    }
    for (const auto& l : spec.lights) {
        if (l.type == Light::Type::Ambient) {
            ps.ambient += l.intensity;
            ps.ambient_color += l.color * l.intensity;
        }
    }
    if (ps.ambient > 0) ps.ambient_color = ps.ambient_color / ps.ambient;
    return ps;
}

bool ray_hits_sphere(const Vec3& o, const Vec3& d, const Vec3& center, float radius, float t_max) {
    const Vec3 oc = o - center;
    const float b = dot(oc, d);
    const float c = dot(oc, oc) - radius * radius;
    if (c <= 0) return true;
    if (b > 0) return false;
    const float disc = b * b - c;
    if (disc < 0) return false;
    const float t = -b - std::sqrt(disc);
    return t < t_max;
}

std::optional<Hit> trace_objects(const PreparedScene& ps, const Vec3& o, const Vec3& d,
                                 float t_max) {
    std::optional<Hit> best;
    float closest = t_max;
    for (const auto& po : ps.objects) {
        if (!ray_hits_sphere(o, d, po.translation, po.bound_radius, closest)) continue;
        const Vec3 lo = po.to_local * (o - po.translation);
        const Vec3 ld = po.to_local * d;
        const auto lh = intersect_local(po.inst->shape, lo, ld, closest);
        if (!lh) continue;
        closest = lh->t;
        Hit h;
        h.t = lh->t;
        h.point = o + d * lh->t;
        Vec3 n = normalize(po.normal_matrix * lh->normal);
        if (dot(n, d) > 0) n = -n;
        h.normal = n;
        h.local_point = lh->point;
        h.material = &po.inst->material;
        best = h;
    }
    return best;
}

// Inner faces of the axis-aligned room box. The camera is inside, so exactly
// one face is hit along any direction; no ray escapes to void.
std::optional<Hit> trace_room(const PreparedScene& ps, const Vec3& o, const Vec3& d, float t_max) {
    const float E = ps.room;
    struct Face {
        RoomFace id;
        Vec3 normal;  // inward
        float plane;  // coordinate value along the face axis
        int axis;
    };
    static_assert(static_cast<int>(RoomFace::Floor) == 0);
    const Face faces[6] = {
        {RoomFace::Floor, {0, 0, 1}, 0.0f, 2},   {RoomFace::Ceiling, {0, 0, -1}, E, 2},
        {RoomFace::WallNorth, {0, -1, 0}, E, 1}, {RoomFace::WallSouth, {0, 1, 0}, -E, 1},
        {RoomFace::WallEast, {-1, 0, 0}, E, 0},  {RoomFace::WallWest, {1, 0, 0}, -E, 0},
    };
    std::optional<Hit> best;
    float closest = t_max;
    for (const auto& f : faces) {
        const float ov = f.axis == 0 ? o.x : f.axis == 1 ? o.y : o.z;
        const float dv = f.axis == 0 ? d.x : f.axis == 1 ? d.y : d.z;
        if (std::abs(dv) < 1e-9f) continue;
        const float t = (f.plane - ov) / dv;
        if (t <= 1e-4f || t >= closest) continue;
        if (dot(f.normal, d) >= 0) continue;  // only faces seen from inside
        closest = t;
        Hit h;
        h.t = t;
        h.point = o + d * t;
        h.normal = f.normal;
        h.local_point = h.point;  // background textures use world coordinates
        for (const auto& bg : ps.spec->background)
            if (bg.face == f.id) h.material = &bg.material;
        best = h;
    }
    return best;
}

bool shadowed(const PreparedScene& ps, const Vec3& point, const Vec3& light_pos) {
    const Vec3 to_light = light_pos - point;
    const float dist = length(to_light);
    const Vec3 d = to_light / dist;
    const Vec3 o = point + d * 1e-3f;
    for (const auto& po : ps.objects) {
        if (!ray_hits_sphere(o, d, po.translation, po.bound_radius, dist)) continue;
        const Vec3 lo = po.to_local * (o - po.translation);
        const Vec3 ld = po.to_local * d;
        if (intersect_local(po.inst->shape, lo, ld, dist - 1e-3f)) return true;
    }
    return false;
}

Vec3 shade(const PreparedScene& ps, const Hit& h, const Vec3& view_dir) {
    const Vec3 albedo = evaluate_texture(*h.material, h.local_point);
    Vec3 color = albedo * ps.ambient_color * ps.ambient;
    const float E = ps.room;
    for (const auto& l : ps.spec->lights) {
        if (l.type != Light::Type::Point) continue;
        const Vec3 to_light = l.position - h.point;
        const float dist = length(to_light);
        const Vec3 ldir = to_light / dist;
        const float ndotl = dot(h.normal, ldir);
        if (ndotl <= 0) continue;
        if (shadowed(ps, h.point, l.position)) continue;
        const float atten = l.intensity / (1.0f + (dist * dist) / (E * E));
        const float kd = h.material->roughness;
        float contribution = kd * ndotl;
        if (kd < 1.0f) {
            const Vec3 half_vec = normalize(ldir - view_dir);
            const float ndoth = std::max(0.0f, dot(h.normal, half_vec));
            // Specular tinted by albedo so a black material stays black.
            contribution += (1.0f - kd) * std::pow(ndoth, 32.0f);
        }
        color += albedo * l.color * (atten * contribution);
    }
    return color;
}

}  // namespace

RgbImage render(const SceneSpec& spec) {
    const PreparedScene ps = prepare(spec);
    const auto& cam = spec.camera;
    if (cam.width <= 0 || cam.height <= 0 || cam.width % 2 || cam.height % 2)
        throw std::invalid_argument("render: resolution must be positive and even");
    if (cam.fov_deg < 10.0f || cam.fov_deg > 170.0f)
        throw std::invalid_argument("render: fov out of [10, 170] degrees");

    Vec3 forward = cam.look_at - cam.position;
    if (length(forward) < 1e-6f) forward = {0, 1, 0};
    forward = normalize(forward);
    Vec3 right = cross(forward, cam.up);
    if (length(right) < 1e-6f) right = cross(forward, Vec3{1, 0, 0});
    right = normalize(right);
    const Vec3 up = cross(right, forward);

    const float tan_half = std::tan(cam.fov_deg * std::numbers::pi_v<float> / 360.0f);
    const float aspect = static_cast<float>(cam.height) / static_cast<float>(cam.width);
    // Normalization so the frame corner sits at r = 1 for the radial model.
    const float corner = std::sqrt(1.0f + aspect * aspect);

    // Fixed supersampling grid: floor(sqrt(spp))^2 samples per pixel.
    const int grid = std::max(1, static_cast<int>(std::sqrt(static_cast<float>(
                                     std::max(1, cam.samples_per_pixel)))));
    const bool distort = cam.k1 != 0.0f || cam.k2 != 0.0f;
    if (distort) {
        // Validate monotonicity once up front (throws on bad coefficients).
        apply_distortion({}, cam.k1, cam.k2);
    }

    RgbImage img(cam.width, cam.height);
    for (int row = 0; row < cam.height; row++) {
        for (int col = 0; col < cam.width; col++) {
            Vec3 acc{0, 0, 0};
            for (int sy = 0; sy < grid; sy++) {
                for (int sx = 0; sx < grid; sx++) {
                    const float px = (static_cast<float>(col) +
                                      (static_cast<float>(sx) + 0.5f) / static_cast<float>(grid)) /
                                         static_cast<float>(cam.width) * 2.0f - 1.0f;
                    const float py = 1.0f - (static_cast<float>(row) +
                                             (static_cast<float>(sy) + 0.5f) / static_cast<float>(grid)) /
                                                static_cast<float>(cam.height) * 2.0f;
                    float nx = px, ny = py * aspect;
                    if (distort) {
                        const float r2 = (nx * nx + ny * ny) / (corner * corner);
                        const float f = 1.0f + cam.k1 * r2 + cam.k2 * r2 * r2;
                        nx *= f;
                        ny *= f;
                    }
                    const Vec3 dir =
                        normalize(forward + right * (nx * tan_half) + up * (ny * tan_half));
                    const float t_max = std::numeric_limits<float>::max();
                    auto hit = trace_objects(ps, cam.position, dir, t_max);
                    auto room_hit = trace_room(ps, cam.position, dir,
                                               hit ? hit->t : t_max);
                    if (room_hit && (!hit || room_hit->t < hit->t)) hit = room_hit;
                    if (hit && hit->material) acc += shade(ps, *hit, dir);
                }
            }
            const float inv = 1.0f / static_cast<float>(grid * grid);
            for (int ch = 0; ch < 3; ch++) {
                const float v = (ch == 0 ? acc.x : ch == 1 ? acc.y : acc.z) * inv;
                img.at(row, col, ch) = std::clamp(v, 0.0f, 1.0f);
            }
        }
    }
    return img;
}

}  // namespace fsid
