#include "so3limb/limb.hpp"

#include <Eigen/SVD>

#include "so3limb/sampling.hpp"

namespace so3limb {

namespace {

double line_point_distance(const Vec3& point_on_line, const Vec3& direction, const Vec3& query) {
    return (query - point_on_line).cross(direction.normalized()).norm();
}

} // namespace

int LimbModel::category_a_count() const {
    int n = 0;
    for (JointCategory c : categories) {
        if (c == JointCategory::A) ++n;
    }
    return n;
}

Vec3 LimbModel::joint_offset(std::size_t i) const {
    const JointSpec& j = spec.joints.at(i);
    if (j.type == JointType::Prismatic) return Vec3::Zero();
    return j.point - spec.center;
}

JointCategory classify_joint_category(const JointSpec& joint, const Vec3& center) {
    if (joint.type == JointType::Prismatic) return JointCategory::NotApplicable;
    if (joint.direction.norm() <= kAbsFloor) {
        throw_error(Errc::zero_direction, "joint direction has zero norm");
    }
    return line_point_distance(joint.point, joint.direction, center) <= kRelTol
               ? JointCategory::A
               : JointCategory::B;
}

LimbModel build_limb(const LimbSpec& spec) {
    if (spec.joints.size() < 3) {
        throw_error(Errc::too_few_joints, "limb needs at least 3 joints");
    }
    if (spec.joints.size() > 5) {
        throw_error(Errc::too_many_joints, "limb supports at most 5 joints");
    }

    LimbModel limb;
    limb.spec = spec;
    limb.twists.reserve(spec.joints.size());
    limb.categories.reserve(spec.joints.size());

    for (const JointSpec& j : spec.joints) {
        if (j.type == JointType::Revolute) {
            limb.twists.push_back(make_twist_revolute(j.direction, j.point - spec.center));
            ++limb.zero_pitch_count;
        } else {
            limb.twists.push_back(make_twist_prismatic(j.direction));
            ++limb.infinite_pitch_count;
        }
        limb.categories.push_back(classify_joint_category(j, spec.center));
    }
    return limb;
}

Eigen::MatrixXd limb_twist_matrix(const LimbModel& limb) {
    Eigen::MatrixXd m(limb.twists.size(), 6);
    for (std::size_t i = 0; i < limb.twists.size(); ++i) {
        m.row(i) = limb.twists[i].coords().transpose();
    }
    return m;
}

std::optional<Vec3> axes_common_point(const std::vector<JointSpec>& joints) {
    std::vector<const JointSpec*> revolutes;
    for (const JointSpec& j : joints) {
        if (j.type == JointType::Revolute) revolutes.push_back(&j);
    }
    if (revolutes.size() < 2) {
        throw_error(Errc::invalid_argument, "need at least two revolute joints");
    }

    bool independent_pair = false;
    for (std::size_t i = 0; i < revolutes.size() && !independent_pair; ++i) {
        for (std::size_t j = i + 1; j < revolutes.size(); ++j) {
            const Vec3 ci = revolutes[i]->direction.normalized();
            const Vec3 cj = revolutes[j]->direction.normalized();
            if (ci.cross(cj).norm() > kRelTol) {
                independent_pair = true;
                break;
            }
        }
    }
    if (!independent_pair) {
        throw_error(Errc::all_parallel, "all revolute axes are parallel");
    }

    // Normal equations for the point minimizing summed squared distances to
    // the axis lines: sum (I - d d^T) x = sum (I - d d^T) p.
    Mat3 a = Mat3::Zero();
    Vec3 b = Vec3::Zero();
    for (const JointSpec* j : revolutes) {
        const Vec3 d = j->direction.normalized();
        const Mat3 proj = Mat3::Identity() - d * d.transpose();
        a += proj;
        b += proj * j->point;
    }
    const Vec3 x = a.ldlt().solve(b);

    double worst = 0.0;
    for (const JointSpec* j : revolutes) {
        worst = std::max(worst, line_point_distance(j->point, j->direction, x));
    }
    if (worst > 1e-8) return std::nullopt;
    return x;
}

const std::array<const char*, PropositionReport::kCount>& PropositionReport::names() {
    static const std::array<const char*, kCount> kNames = {
        "intersection_point_invariance",
        "parallel_axes_orientation_consistency",
        "concurrence_preservation",
        "prismatic_joint_effect",
    };
    return kNames;
}

PropositionReport check_geometric_propositions(std::uint64_t seed, int trials) {
    if (trials < 1) {
        throw_error(Errc::invalid_argument, "trials must be >= 1");
    }

    PropositionReport report;
    report.trials = trials;
    report.seed = seed;
    Sampler rng(seed);

    auto rotate_about_line = [](const Vec3& axis_dir, const Vec3& axis_point, double angle,
                                const Vec3& x) {
        const Mat3 r = Eigen::AngleAxisd(angle, axis_dir.normalized()).toRotationMatrix();
        return (r * (x - axis_point) + axis_point).eval();
    };
    auto delta_scaled = [](Sampler& s) { return (s.uniform(-10.0, 10.0) * s.unit_vector()).eval(); };

    for (int t = 0; t < trials; ++t) {
        // (1) rotation about an axis through p fixes p
        {
            const Vec3 d = rng.unit_vector();
            const Vec3 p = rng.point_in_cube();
            const double theta = rng.uniform(0.0, 2.0 * M_PI);
            const Vec3 q = rotate_about_line(d, p, theta, p);
            report.max_residual[0] = std::max(report.max_residual[0], (q - p).norm());
        }
        // (2) rotating a link about one of two parallel axes keeps them parallel
        {
            const Vec3 d = rng.unit_vector();
            const Vec3 p1 = rng.point_in_cube();
            const Vec3 p2 = rng.point_in_cube();
            const double theta = rng.uniform(0.0, 2.0 * M_PI);
            // axis 2 carried by the link, recomputed from two transformed points
            const Vec3 q0 = rotate_about_line(d, p1, theta, p2);
            const Vec3 q1 = rotate_about_line(d, p1, theta, (p2 + d).eval());
            const Vec3 d2 = (q1 - q0).normalized();
            report.max_residual[1] = std::max(report.max_residual[1], d2.cross(d).norm());
        }
        // (3) rotating about any member of a concurrent pencil preserves the
        //     common point
        {
            const Vec3 pc = rng.point_in_cube();
            const Vec3 d1 = rng.unit_vector();
            const Vec3 d2 = rng.unit_vector();
            const double theta = rng.uniform(0.0, 2.0 * M_PI);
            const Mat3 r = Eigen::AngleAxisd(theta, d1).toRotationMatrix();
            // axis 2 (through pc) after rotating the assembly about axis 1
            const Vec3 d2r = r * d2;
            const Vec3 p2r = r * (pc - pc) + pc;
            report.max_residual[2] =
                std::max(report.max_residual[2], (pc - p2r).cross(d2r.normalized()).norm());
        }
        // (4) a translation along a prismatic direction preserves parallelism
        {
            const Vec3 d = rng.unit_vector();
            const Vec3 p1 = rng.point_in_cube();
            const Vec3 p2 = rng.point_in_cube();
            const Vec3 slide = delta_scaled(rng);
            const double theta = rng.uniform(0.0, 2.0 * M_PI);
            // rotate axis 2 about axis 1, then translate the link along the
            // prismatic direction; direction recomputed from two points
            const Vec3 q0 = rotate_about_line(d, p1, theta, p2) + slide;
            const Vec3 q1 = rotate_about_line(d, p1, theta, (p2 + d).eval()) + slide;
            const Vec3 d2 = (q1 - q0).normalized();
            report.max_residual[3] = std::max(report.max_residual[3], d2.cross(d).norm());
        }
    }
    return report;
}

} // namespace so3limb
