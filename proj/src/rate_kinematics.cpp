#include "so3limb/rate_kinematics.hpp"

#include <sstream>

#include "linalg.hpp"

namespace so3limb {

namespace {

/// Re-expresses a screw about a new reference point (pure moment shift).
Screw recentered(const Screw& s, const Vec3& from_center, const Vec3& to_center) {
    const Vec3 shift = to_center - from_center;
    if (shift.norm() == 0) return s;
    RigidTransform x;
    x.rotation = Mat3::Identity();
    x.translation = -shift;
    return adjoint_transform(x, s);
}

} // namespace

Eigen::MatrixXd JacobianBlocks::matrix() const {
    const int k = actuator_count();
    const int m = constraint_count();
    Eigen::MatrixXd g(k + m, 6);
    g.topLeftCorner(k, 3) = g_av.transpose();
    g.topRightCorner(k, 3) = g_aw.transpose();
    g.bottomLeftCorner(m, 3) = g_cv.transpose();
    g.bottomRightCorner(m, 3) = g_cw.transpose();
    return g;
}

JacobianBlocks assemble_extended_jacobian(const RobotModel& robot) {
    if (robot.limbs.size() < 3) {
        throw_error(Errc::invalid_argument, "robot needs at least 3 limbs");
    }
    if (robot.actuated.size() != robot.limbs.size()) {
        throw_error(Errc::invalid_argument, "one actuated joint per limb required");
    }

    const int k = static_cast<int>(robot.limbs.size());
    std::vector<Screw> actuation;
    std::vector<Screw> constraints;
    actuation.reserve(k);
    for (int i = 0; i < k; ++i) {
        const LimbModel& limb = robot.limbs[i];
        try {
            actuation.push_back(
                recentered(actuation_analysis(limb, robot.actuated[i]).wrench, limb.spec.center,
                           robot.center));
        } catch (const Error& e) {
            if (e.code() == Errc::no_unique_actuation_wrench) {
                throw_error(Errc::singular_limb,
                            "limb " + std::to_string(i + 1) + ": " + e.what());
            }
            throw;
        }
        for (const Screw& w : constraint_wrench_space(limb)) {
            constraints.push_back(recentered(w, limb.spec.center, robot.center));
        }
    }

    JacobianBlocks blocks;
    blocks.g_av.resize(3, k);
    blocks.g_aw.resize(3, k);
    for (int i = 0; i < k; ++i) {
        blocks.g_av.col(i) = actuation[i].dir;
        blocks.g_aw.col(i) = actuation[i].mom;
    }
    const int m = static_cast<int>(constraints.size());
    blocks.g_cv.resize(3, m);
    blocks.g_cw.resize(3, m);
    for (int i = 0; i < m; ++i) {
        blocks.g_cv.col(i) = constraints[i].dir;
        blocks.g_cw.col(i) = constraints[i].mom;
    }
    return blocks;
}

BlockInverse block_inverse(const JacobianBlocks& blocks) {
    if (blocks.actuator_count() != 3 || blocks.constraint_count() != 3) {
        throw_error(Errc::invalid_argument, "block inverse requires k = m = 3");
    }
    const Mat3 a = blocks.g_av.transpose();
    const Mat3 b = blocks.g_aw.transpose();
    const Mat3 c = blocks.g_cv.transpose();
    const Mat3 d = blocks.g_cw.transpose();

    Eigen::FullPivLU<Mat3> lu_a(a);
    if (!lu_a.isInvertible() || lu_a.rcond() < kRelTol) {
        throw_error(Errc::singular_actuation_block, "G_av^T is singular");
    }
    const Mat3 a_inv = lu_a.inverse();
    const Mat3 schur = d - c * a_inv * b;
    Eigen::FullPivLU<Mat3> lu_s(schur);
    if (!lu_s.isInvertible() || lu_s.rcond() < kRelTol) {
        throw_error(Errc::singular_schur_complement, "D - C A^-1 B is singular");
    }
    const Mat3 schur_inv = lu_s.inverse();

    BlockInverse inv;
    inv.q = a_inv + a_inv * b * schur_inv * c * a_inv;
    inv.r = -schur_inv * c * a_inv;
    inv.s = -a_inv * b * schur_inv;
    inv.t = schur_inv;
    return inv;
}

Mat6 BlockInverse::assemble() const {
    Mat6 m;
    m.topLeftCorner<3, 3>() = q;
    m.topRightCorner<3, 3>() = s;
    m.bottomLeftCorner<3, 3>() = r;
    m.bottomRightCorner<3, 3>() = t;
    return m;
}

Vec3 dependent_translation(const JacobianBlocks& blocks, const Vec3& qdot) {
    return block_inverse(blocks).q * qdot;
}

Vec6 project_feasible(const JacobianBlocks& blocks, const Vec6& xdot_arbitrary) {
    const int m = blocks.constraint_count();
    Eigen::MatrixXd gc(6, m);
    gc.topRows(3) = blocks.g_cv;
    gc.bottomRows(3) = blocks.g_cw;
    const Mat6 projector = Mat6::Identity() - gc * detail::pseudo_inverse(gc);
    return projector * xdot_arbitrary;
}

Vec6 forward_rate(const JacobianBlocks& blocks, const Eigen::VectorXd& qdot) {
    if (qdot.size() != blocks.actuator_count()) {
        throw_error(Errc::invalid_argument, "qdot size must match the actuator count");
    }
    const Eigen::MatrixXd g = blocks.matrix();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(g.rows());
    rhs.head(qdot.size()) = qdot;
    return detail::pseudo_inverse(g) * rhs;
}

PlatformTwistSpace platform_twist_space(const RobotModel& robot) {
    if (robot.limbs.size() < 3) {
        throw_error(Errc::invalid_argument, "robot needs at least 3 limbs");
    }
    // Intersection of the limb twist spans: eigenvectors of the averaged
    // projector with eigenvalue 1.
    Mat6 avg = Mat6::Zero();
    for (const LimbModel& limb : robot.limbs) {
        // Twists about the robot center.
        Eigen::MatrixXd t(6, limb.joint_count());
        for (std::size_t j = 0; j < limb.joint_count(); ++j) {
            t.col(j) = recentered(limb.twists[j], limb.spec.center, robot.center).coords();
        }
        const Eigen::MatrixXd basis = detail::column_space(t);
        avg += basis * basis.transpose();
    }
    avg /= static_cast<double>(robot.limbs.size());

    Eigen::SelfAdjointEigenSolver<Mat6> eig(avg);
    PlatformTwistSpace space;
    for (int i = 5; i >= 0; --i) {
        if (eig.eigenvalues()(i) >= 1.0 - kRelTol) {
            Eigen::VectorXd v = eig.eigenvectors().col(i);
            detail::canonicalize_sign(v);
            space.basis.push_back(Screw::from_coords(v, ScrewKind::Twist));
        }
    }
    space.dimension = static_cast<int>(space.basis.size());
    return space;
}

PlatformVerdict verify_so3_platform(const RobotModel& robot) {
    PlatformVerdict verdict;
    std::vector<Screw> constraints;
    for (const LimbModel& limb : robot.limbs) {
        verdict.limb_so3_necessary.push_back(check_so3_necessary(limb));
        for (const Screw& w : constraint_wrench_space(limb)) {
            const Screw shifted = recentered(w, limb.spec.center, robot.center);
            constraints.push_back(shifted);
            verdict.max_moment_residual =
                std::max(verdict.max_moment_residual, shifted.mom.norm());
        }
    }

    Eigen::MatrixXd gcv(3, constraints.size());
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        gcv.col(i) = constraints[i].dir;
    }
    verdict.translation_constraint_rank = detail::numeric_rank(gcv);

    const PlatformTwistSpace space = platform_twist_space(robot);
    verdict.platform_dimension = space.dimension;
    for (const Screw& t : space.basis) {
        verdict.max_center_velocity = std::max(verdict.max_center_velocity, t.mom.norm());
    }

    bool limbs_ok = true;
    for (bool b : verdict.limb_so3_necessary) limbs_ok &= b;
    verdict.so3 = limbs_ok && verdict.translation_constraint_rank == 3 &&
                  verdict.platform_dimension == 3 && verdict.max_center_velocity <= 1e-8;

    std::ostringstream diag;
    diag << "platform dimension " << verdict.platform_dimension << ", translation constraint rank "
         << verdict.translation_constraint_rank;
    verdict.diagnostics.push_back(diag.str());
    if (verdict.translation_constraint_rank < 3) {
        verdict.diagnostics.push_back("rank deficiency: constraint forces do not span translations");
    }
    if (!limbs_ok) {
        verdict.diagnostics.push_back("some limb violates the pure-force-through-center condition");
    }
    return verdict;
}

} // namespace so3limb
