#include "so3limb/screw.hpp"

namespace so3limb {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::zero_direction: return "ZeroDirection";
        case Errc::kind_mismatch: return "KindMismatch";
        case Errc::degenerate_screw: return "DegenerateScrew";
        case Errc::too_few_joints: return "TooFewJoints";
        case Errc::too_many_joints: return "TooManyJoints";
        case Errc::all_parallel: return "AllParallel";
        case Errc::not_five_system: return "NotFiveSystem";
        case Errc::system_mismatch: return "SystemMismatch";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::no_unique_actuation_wrench: return "NoUniqueActuationWrench";
        case Errc::singular_actuation_block: return "SingularA";
        case Errc::singular_schur_complement: return "SingularSchur";
        case Errc::singular_limb: return "SingularLimb";
        case Errc::exhausted_resampling: return "ExhaustedResampling";
        case Errc::parse_error: return "ParseError";
        case Errc::validation_error: return "ValidationError";
        case Errc::unknown_descriptor: return "UnknownDescriptor";
        case Errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

Screw make_twist_revolute(const Vec3& direction, const Vec3& point_on_axis) {
    const double n = direction.norm();
    if (n <= kAbsFloor) {
        throw_error(Errc::zero_direction, "revolute joint direction has zero norm");
    }
    const Vec3 d = direction / n;
    return Screw::twist(d, d.cross(point_on_axis));
}

Screw make_twist_prismatic(const Vec3& direction) {
    const double n = direction.norm();
    if (n <= kAbsFloor) {
        throw_error(Errc::zero_direction, "prismatic joint direction has zero norm");
    }
    return Screw::twist(Vec3::Zero(), direction / n);
}

Screw make_wrench_force(const Vec3& direction, const Vec3& point_on_line) {
    const double n = direction.norm();
    if (n <= kAbsFloor) {
        throw_error(Errc::zero_direction, "force direction has zero norm");
    }
    const Vec3 d = direction / n;
    return Screw::wrench(d, d.cross(point_on_line));
}

double reciprocal_product(const Screw& twist, const Screw& wrench) {
    if (twist.kind != ScrewKind::Twist || wrench.kind != ScrewKind::Wrench) {
        throw_error(Errc::kind_mismatch, "reciprocal_product expects (twist, wrench)");
    }
    return twist.dir.dot(wrench.mom) + twist.mom.dot(wrench.dir);
}

Screw elliptic_polar(const Screw& s) {
    return {s.mom, s.dir, s.kind == ScrewKind::Twist ? ScrewKind::Wrench : ScrewKind::Twist};
}

PitchClass pitch(const Screw& s) {
    const double na = s.dir.norm();
    const double nb = s.mom.norm();
    if (na <= kAbsFloor && nb <= kAbsFloor) {
        throw_error(Errc::degenerate_screw, "both screw blocks are zero");
    }
    if (na <= std::max(kRelTol * nb, kAbsFloor)) {
        return {PitchClass::Kind::Infinite, 0.0};
    }
    const double h = s.dir.dot(s.mom) / (na * na);
    if (std::abs(h) <= std::max(kRelTol * nb / na, kAbsFloor)) {
        return {PitchClass::Kind::Zero, 0.0};
    }
    return {PitchClass::Kind::Finite, h};
}

Mat6 adjoint_matrix(const RigidTransform& X) {
    Mat6 ad = Mat6::Zero();
    ad.topLeftCorner<3, 3>() = X.rotation;
    ad.bottomRightCorner<3, 3>() = X.rotation;
    ad.bottomLeftCorner<3, 3>() = -skew(X.translation) * X.rotation;
    return ad;
}

Screw adjoint_transform(const RigidTransform& X, const Screw& s) {
    const Vec3 dir = X.rotation * s.dir;
    const Vec3 mom = X.rotation * s.mom - X.translation.cross(dir);
    return {dir, mom, s.kind};
}

double cosine_distance(const Vec3& a, const Vec3& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na <= kAbsFloor || nb <= kAbsFloor) {
        return 1.0;
    }
    return 1.0 - std::abs(a.dot(b)) / (na * nb);
}

} // namespace so3limb
