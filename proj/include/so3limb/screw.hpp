#pragma once

#include <Eigen/Dense>

#include "so3limb/errors.hpp"

namespace so3limb {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Repository-wide tolerances. All geometry lives in a unit-scale workspace,
// so the absolute floor is meaningful.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsFloor = 1e-12;

enum class ScrewKind { Twist, Wrench };

/// Six-coordinate Pluecker screw.
///
/// The two blocks are (direction, moment) in the line-geometry sense:
/// for a Twist they hold (angular velocity, linear velocity at the reference
/// point); for a Wrench (force, moment about the reference point).
/// Moments are built with the `direction x position` sign convention, the
/// same for both kinds, so the Klein pairing below is the mutual moment of
/// the two screw axes.
struct Screw {
    Vec3 dir;
    Vec3 mom;
    ScrewKind kind;

    static Screw twist(const Vec3& dir, const Vec3& mom) { return {dir, mom, ScrewKind::Twist}; }
    static Screw wrench(const Vec3& dir, const Vec3& mom) { return {dir, mom, ScrewKind::Wrench}; }

    Vec6 coords() const {
        Vec6 c;
        c << dir, mom;
        return c;
    }

    static Screw from_coords(const Vec6& c, ScrewKind kind) {
        return {c.head<3>(), c.tail<3>(), kind};
    }

    bool valid() const { return dir.norm() > kAbsFloor || mom.norm() > kAbsFloor; }
};

struct PitchClass {
    enum class Kind { Zero, Finite, Infinite };
    Kind kind;
    double value; // finite pitch value; 0 for Zero, unused for Infinite

    bool is_zero() const { return kind == Kind::Zero; }
    bool is_infinite() const { return kind == Kind::Infinite; }
};

/// Proper rigid transform: x -> R x + t.
struct RigidTransform {
    Mat3 rotation;
    Vec3 translation;

    static RigidTransform identity() { return {Mat3::Identity(), Vec3::Zero()}; }

    bool is_valid(double tol = 1e-9) const {
        return (rotation.transpose() * rotation - Mat3::Identity()).norm() <= tol &&
               std::abs(rotation.determinant() - 1.0) <= tol;
    }
};

inline Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0, -v.z(), v.y(),
         v.z(), 0, -v.x(),
         -v.y(), v.x(), 0;
    return m;
}

/// Zero-pitch twist of a revolute joint: [d, d x p] with d normalized.
Screw make_twist_revolute(const Vec3& direction, const Vec3& point_on_axis);

/// Infinite-pitch twist of a prismatic joint: [0, d] with d normalized.
Screw make_twist_prismatic(const Vec3& direction);

/// Zero-pitch wrench: pure force along `direction` through `point_on_line`,
/// moment built with the same sign convention as make_twist_revolute.
Screw make_wrench_force(const Vec3& direction, const Vec3& point_on_line);

/// Klein pairing t.dir . w.mom + t.mom . w.dir. Zero iff the wrench does no
/// work on the twist.
double reciprocal_product(const Screw& twist, const Screw& wrench);

/// Block-swap involution mapping twists to wrenches and back.
Screw elliptic_polar(const Screw& s);

PitchClass pitch(const Screw& s);

/// Applies the 6x6 adjoint [[R, 0], [-[t]x R, R]] of the transform to the
/// screw. The same matrix transforms both kinds in this moment convention
/// and it preserves the Klein pairing and the pitch class.
Screw adjoint_transform(const RigidTransform& X, const Screw& s);

Mat6 adjoint_matrix(const RigidTransform& X);

/// 1 - |cos angle| between two directions; scale- and sign-insensitive.
double cosine_distance(const Vec3& a, const Vec3& b);

} // namespace so3limb
