#pragma once

#include <string>
#include <vector>

#include "so3limb/constraint.hpp"
#include "so3limb/limb.hpp"

namespace so3limb {

/// Robot-level rate model: at least three limbs sharing one rotation center,
/// one actuated joint per limb.
struct RobotModel {
    std::vector<LimbModel> limbs;
    Vec3 center = Vec3::Zero();
    std::vector<int> actuated; // one joint index per limb
};

/// Partition of the extended Jacobian about the robot center. Columns of
/// [g_av; g_aw] are the per-limb actuation wrenches, columns of [g_cv; g_cw]
/// the stacked constraint wrenches.
struct JacobianBlocks {
    Eigen::Matrix3Xd g_av, g_aw; // 3 x k, k = actuator count
    Eigen::Matrix3Xd g_cv, g_cw; // 3 x m, m = constraint count

    int actuator_count() const { return static_cast<int>(g_av.cols()); }
    int constraint_count() const { return static_cast<int>(g_cv.cols()); }

    /// Rows of the velocity relation: [q_dot; 0] = matrix() * [v; w].
    Eigen::MatrixXd matrix() const;
};

JacobianBlocks assemble_extended_jacobian(const RobotModel& robot);

/// Task-space coordinates [v; w] of a platform twist (screws store the
/// angular block first).
inline Vec6 task_coords(const Screw& twist) {
    Vec6 x;
    x << twist.mom, twist.dir;
    return x;
}

/// Schur-complement blocks of the inverse of the square (k = m = 3) velocity
/// relation, A = g_av^T, B = g_aw^T, C = g_cv^T, D = g_cw^T.
struct BlockInverse {
    Mat3 q, r, s, t;

    /// The assembled 6x6 inverse; q sits top-left, t bottom-right, with r and
    /// s on the off-diagonal positions that make inverse * matrix = identity.
    Mat6 assemble() const;
};

BlockInverse block_inverse(const JacobianBlocks& blocks);

/// Platform translation induced by the actuator rates, v = Q * qdot.
Vec3 dependent_translation(const JacobianBlocks& blocks, const Vec3& qdot);

/// Projection of an arbitrary task velocity onto the feasible motion space,
/// (I - G_c G_c^+) xdot.
Vec6 project_feasible(const JacobianBlocks& blocks, const Vec6& xdot_arbitrary);

/// Forward rate map [v; w] for given actuator rates via a rank-revealing
/// pseudo-inverse of the velocity relation.
Vec6 forward_rate(const JacobianBlocks& blocks, const Eigen::VectorXd& qdot);

struct PlatformTwistSpace {
    std::vector<Screw> basis; // orthonormal twists about the robot center
    int dimension = 0;
};

/// Numerical intersection of the limbs' joint-twist spans.
PlatformTwistSpace platform_twist_space(const RobotModel& robot);

struct PlatformVerdict {
    bool so3 = false;
    std::vector<bool> limb_so3_necessary;
    int translation_constraint_rank = 0; // rank of the stacked g_cv, must be 3
    int platform_dimension = 0;          // must be 3
    double max_center_velocity = 0.0;    // linear part of the basis twists at the center
    double max_moment_residual = 0.0;    // constraint wrench moments about the center
    std::vector<std::string> diagnostics;
};

PlatformVerdict verify_so3_platform(const RobotModel& robot);

} // namespace so3limb
