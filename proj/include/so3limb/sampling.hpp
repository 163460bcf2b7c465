#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "so3limb/screw.hpp"

namespace so3limb {

/// Name recorded in reports for reproducibility.
inline constexpr const char* kRngName = "mt19937_64";

/// FNV-1a; stable string hash for deriving per-descriptor seeds.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// splitmix64 step; used to derive independent per-task seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(a) ^ b);
}

/// Deterministic sampler; draws are pinned to the engine's raw 64-bit output
/// so results do not depend on library distribution internals.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    Vec3 point_in_cube(double half_width = 1.0) {
        return {uniform(-half_width, half_width), uniform(-half_width, half_width),
                uniform(-half_width, half_width)};
    }

    Vec3 unit_vector() {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, 2.0 * M_PI);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    /// Unit vector orthogonal to `axis`, uniform in angle.
    Vec3 unit_vector_orthogonal_to(const Vec3& axis) {
        const Vec3 n = axis.normalized();
        Vec3 u = std::abs(n.x()) < 0.9 ? Vec3::UnitX().cross(n) : Vec3::UnitY().cross(n);
        u.normalize();
        const Vec3 v = n.cross(u);
        const double phi = uniform(0.0, 2.0 * M_PI);
        return std::cos(phi) * u + std::sin(phi) * v;
    }

    RigidTransform rigid_transform(double translation_scale = 1.0) {
        // Rotation from a random axis-angle; deterministic and uniform enough
        // for property tests.
        const Vec3 axis = unit_vector();
        const double angle = uniform(0.0, 2.0 * M_PI);
        RigidTransform X;
        X.rotation = Eigen::AngleAxisd(angle, axis).toRotationMatrix();
        X.translation = point_in_cube(translation_scale);
        return X;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace so3limb
