#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "so3limb/screw.hpp"

namespace so3limb {

enum class JointType { Revolute, Prismatic };

/// Revolute joints split by whether their axis passes through the platform's
/// rotation center; prismatic joints do not participate.
enum class JointCategory { A, B, NotApplicable };

struct JointSpec {
    JointType type;
    Vec3 direction;
    Vec3 point; // a point on the axis; ignored for Prismatic

    static JointSpec revolute(const Vec3& direction, const Vec3& point) {
        return {JointType::Revolute, direction, point};
    }
    static JointSpec prismatic(const Vec3& direction) {
        return {JointType::Prismatic, direction, Vec3::Zero()};
    }
};

struct LimbSpec {
    std::vector<JointSpec> joints; // 3 to 5 joints, base to platform
    Vec3 center = Vec3::Zero();    // candidate rotation center
};

/// Validated, analyzable limb. Twists are taken about the center
/// (l_i = point_i - center). Immutable after build.
struct LimbModel {
    LimbSpec spec;
    std::vector<Screw> twists;
    int zero_pitch_count = 0;     // revolute joints
    int infinite_pitch_count = 0; // prismatic joints
    std::vector<JointCategory> categories;

    std::size_t joint_count() const { return spec.joints.size(); }

    int category_a_count() const;

    /// Position of joint i relative to the center (zero for prismatic).
    Vec3 joint_offset(std::size_t i) const;

    /// More than three axes through the center means redundant joints.
    bool redundant_geometry() const { return category_a_count() >= 4; }
};

LimbModel build_limb(const LimbSpec& spec);

/// n x 6 matrix whose row i is the twist of joint i about the limb center.
Eigen::MatrixXd limb_twist_matrix(const LimbModel& limb);

JointCategory classify_joint_category(const JointSpec& joint, const Vec3& center);

/// Least-squares common point of the revolute axis lines; empty when the
/// residual distance exceeds 1e-8.
std::optional<Vec3> axes_common_point(const std::vector<JointSpec>& joints);

/// Numerical check of the four geometric facts underpinning the limb
/// classification: (1) rotation about an axis fixes its points, (2) parallel
/// axes stay parallel under rotation about one of them, (3) a concurrent
/// pencil keeps its common point, (4) translation along a prismatic joint
/// preserves parallelism.
struct PropositionReport {
    static constexpr int kCount = 4;
    static const std::array<const char*, kCount>& names();

    std::array<double, kCount> max_residual{};
    int trials = 0;
    std::uint64_t seed = 0;

    bool all_within(double tol) const {
        for (double r : max_residual) {
            if (!(r <= tol)) return false;
        }
        return true;
    }
};

PropositionReport check_geometric_propositions(std::uint64_t seed, int trials);

} // namespace so3limb
