#include <Eigen/SVD>

#include "linalg.hpp"
#include "so3limb/enumeration.hpp"
#include "so3limb/sampling.hpp"

namespace so3limb {

namespace {

constexpr int kMaxAttempts = 100;
constexpr double kMinSeparation = 0.1; // minimum cross norm between sampled directions

Vec3 sample_direction_apart(Sampler& rng, const std::vector<Vec3>& avoid) {
    for (int i = 0; i < kMaxAttempts; ++i) {
        const Vec3 d = rng.unit_vector();
        bool far = true;
        for (const Vec3& a : avoid) {
            if (d.cross(a).norm() < kMinSeparation) {
                far = false;
                break;
            }
        }
        if (far) return d;
    }
    throw_error(Errc::exhausted_resampling, "could not sample an independent direction");
}

bool off_center_supported(const VariantDescriptor& d) {
    return d.case_tag == CaseTag::I &&
           (d.system == SystemFamily::FiveZero || d.system == SystemFamily::FourZeroOneInf ||
            d.system == SystemFamily::ThreeZeroTwoInf);
}

struct Roles {
    std::vector<int> intersect; // marker order
    std::vector<int> parallel_r;
    std::vector<int> parallel_p;
    std::vector<int> free_r;
    std::vector<int> free_p;
};

Roles split_roles(const VariantDescriptor& d) {
    Roles r;
    for (std::size_t j = 0; j < d.joints.size(); ++j) {
        const JointSymbol& sym = d.joints[j];
        const int pos = static_cast<int>(j);
        switch (sym.marker) {
            case MarkerKind::Intersect:
                r.intersect.push_back(pos);
                break;
            case MarkerKind::Parallel:
                (sym.type == JointType::Revolute ? r.parallel_r : r.parallel_p).push_back(pos);
                break;
            case MarkerKind::None:
                (sym.type == JointType::Revolute ? r.free_r : r.free_p).push_back(pos);
                break;
        }
    }
    return r;
}

/// One sampling attempt; geometry pinned by the descriptor's markers.
LimbSpec sample_limb(const VariantDescriptor& d, Sampler& rng, const Vec3& center) {
    const Roles roles = split_roles(d);
    const bool off_center = !d.intersection_at_center;
    if (off_center && !off_center_supported(d)) {
        throw_error(Errc::invalid_argument,
                    "off-center intersection is not sound for " + d.id());
    }

    Vec3 common = center;
    if (off_center) {
        do {
            common = center + rng.point_in_cube();
        } while ((common - center).norm() < 0.2);
    }
    const Vec3 line = off_center ? (common - center).normalized() : Vec3::Zero();

    std::vector<JointSpec> joints(d.joint_count());

    // Intersect-marked joints: axes pinned to the common point, directions
    // pairwise independent. The structured Case-II families force the second
    // pair direction orthogonal to the parallel group and the first member.
    std::vector<Vec3> marked_dirs;
    Vec3 group_dir = Vec3::Zero();
    if (!roles.parallel_r.empty()) {
        group_dir = rng.unit_vector();
    }

    const bool structured_pair =
        d.case_tag == CaseTag::II &&
        (d.system == SystemFamily::FiveZero || d.system == SystemFamily::FourZeroOneInf);

    for (std::size_t k = 0; k < roles.intersect.size(); ++k) {
        const int pos = roles.intersect[k];
        Vec3 dir;
        if (structured_pair && k == 1) {
            dir = group_dir.cross(marked_dirs.front()).normalized();
        } else if (structured_pair && k == 0) {
            std::vector<Vec3> avoid = marked_dirs;
            avoid.push_back(group_dir);
            dir = sample_direction_apart(rng, avoid);
        } else if (k == 2) {
            // Third axis of a concurrent triple must stand well off the
            // plane of the first two.
            for (int i = 0;; ++i) {
                dir = sample_direction_apart(rng, marked_dirs);
                if (std::abs(dir.dot(marked_dirs[0].cross(marked_dirs[1]))) >= 0.05) break;
                if (i >= kMaxAttempts) {
                    throw_error(Errc::exhausted_resampling, "coplanar concurrent triple");
                }
            }
        } else {
            dir = sample_direction_apart(rng, marked_dirs);
        }
        marked_dirs.push_back(dir);
        joints[pos] = JointSpec::revolute(dir, common);
    }

    // Parallel-marked revolutes share the group direction bit-for-bit.
    for (int pos : roles.parallel_r) {
        joints[pos] = JointSpec::revolute(group_dir, center + rng.point_in_cube());
    }

    // Parallel-marked prismatics translate inside the plane orthogonal to
    // the group direction.
    std::vector<Vec3> block_pris_dirs;
    for (int pos : roles.parallel_p) {
        Vec3 dir;
        for (int i = 0;; ++i) {
            dir = rng.unit_vector_orthogonal_to(group_dir);
            bool far = true;
            for (const Vec3& a : block_pris_dirs) {
                if (dir.cross(a).norm() < kMinSeparation) far = false;
            }
            if (far) break;
            if (i >= kMaxAttempts) {
                throw_error(Errc::exhausted_resampling, "degenerate prismatic block");
            }
        }
        block_pris_dirs.push_back(dir);
        joints[pos] = JointSpec::prismatic(dir);
    }

    // Free revolutes: fully random, except that in an off-center variant the
    // axis must meet the line joining the center and the common point.
    for (int pos : roles.free_r) {
        const Vec3 dir = rng.unit_vector();
        Vec3 point = center + rng.point_in_cube();
        if (off_center) {
            point = center + rng.uniform(-1.0, 1.0) * (common - center);
        }
        joints[pos] = JointSpec::revolute(dir, point);
    }

    // Free prismatics: random directions; orthogonal to the candidate force
    // line in the off-center variant.
    std::vector<Vec3> free_pris_dirs;
    for (int pos : roles.free_p) {
        Vec3 dir;
        for (int i = 0;; ++i) {
            dir = off_center ? rng.unit_vector_orthogonal_to(line) : rng.unit_vector();
            bool far = true;
            for (const Vec3& a : free_pris_dirs) {
                if (dir.cross(a).norm() < kMinSeparation) far = false;
            }
            if (far) break;
            if (i >= kMaxAttempts) {
                throw_error(Errc::exhausted_resampling, "degenerate prismatic directions");
            }
        }
        free_pris_dirs.push_back(dir);
        joints[pos] = JointSpec::prismatic(dir);
    }

    // 4$0 rows: the stated condition puts every axis through the center.
    if (d.system == SystemFamily::FourZero) {
        for (std::size_t j = 0; j < joints.size(); ++j) {
            joints[j].point = common;
        }
    }

    LimbSpec spec;
    spec.joints = std::move(joints);
    spec.center = center;
    return spec;
}

int expected_twist_rank(const VariantDescriptor& d) {
    if (d.system == SystemFamily::FourZero) return 3;
    return static_cast<int>(d.joint_count());
}

} // namespace

LimbModel instantiate_geometry(const VariantDescriptor& descriptor, std::uint64_t seed,
                               const Vec3& center) {
    Sampler rng(mix_seed(seed, fnv1a(descriptor.id())));
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        LimbModel limb = build_limb(sample_limb(descriptor, rng, center));
        const Eigen::MatrixXd m = limb_twist_matrix(limb);
        const int expected = expected_twist_rank(descriptor);
        // Demand the intended rank with a healthy margin so downstream rank
        // decisions never sit on the tolerance fence.
        if (detail::numeric_rank(m) == expected && detail::numeric_rank(m, 1e-4) == expected) {
            return limb;
        }
    }
    throw_error(Errc::exhausted_resampling,
                "no well-conditioned sample for " + descriptor.id());
}

VerificationReport verify_variant(const VariantDescriptor& descriptor, int trials,
                                  std::uint64_t seed) {
    if (trials < 1) {
        throw_error(Errc::invalid_argument, "trials must be >= 1");
    }

    VerificationReport report;
    report.descriptor_id = descriptor.id();
    report.trials = trials;
    report.seed = seed;
    report.rng_name = kRngName;
    report.redundant = descriptor.redundant;

    bool rank_deficiency_seen = false;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = mix_seed(seed, static_cast<std::uint64_t>(t));
        const LimbModel limb = instantiate_geometry(descriptor, trial_seed, Vec3::Zero());
        const ConstraintReport analysis = analyze_limb(limb, &descriptor);

        report.max_moment_residual =
            std::max(report.max_moment_residual, analysis.max_moment_residual);

        // Residual of the central rotations against the limb's twist span;
        // zero when the limb can carry every rotation about the center.
        Eigen::MatrixXd t_cols(6, limb.joint_count());
        for (std::size_t j = 0; j < limb.joint_count(); ++j) {
            t_cols.col(j) = limb.twists[j].coords();
        }
        const Eigen::MatrixXd basis = detail::column_space(t_cols);
        for (int axis = 0; axis < 3; ++axis) {
            Vec6 rot = Vec6::Zero();
            rot(axis) = 1.0;
            const double res = (rot - basis * (basis.transpose() * rot)).norm();
            report.max_center_velocity = std::max(report.max_center_velocity, res);
        }

        const bool checklist_ok = analysis.checklist && analysis.checklist->overall;
        report.checklist_all = report.checklist_all && checklist_ok;

        if (descriptor.redundant) {
            if (analysis.twist_rank < static_cast<int>(limb.joint_count())) {
                rank_deficiency_seen = true;
                ++report.passes;
            }
        } else if (analysis.so3_necessary && checklist_ok &&
                   analysis.max_moment_residual <= 1e-8) {
            ++report.passes;
        }
    }

    if (descriptor.redundant) {
        report.notes.push_back(rank_deficiency_seen
                                   ? "rank deficiency: dependent joint screws (redundant case)"
                                   : "redundant descriptor without observed rank deficiency");
    }
    return report;
}

RobotModel build_robot(const std::array<VariantDescriptor, 3>& descriptors, std::uint64_t seed,
                       const Vec3& center) {
    for (const VariantDescriptor& d : descriptors) {
        if (d.redundant) {
            throw_error(Errc::invalid_argument,
                        "redundant descriptor " + d.id() + " cannot form a robot limb");
        }
    }

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        RobotModel robot;
        robot.center = center;
        bool ok = true;
        std::vector<Screw> constraints;
        for (int i = 0; i < 3 && ok; ++i) {
            const std::uint64_t limb_seed =
                mix_seed(seed, 1000003ULL * static_cast<std::uint64_t>(attempt) + 13ULL * i + 1ULL);
            LimbModel limb = instantiate_geometry(descriptors[i], limb_seed, center);

            int actuated = -1;
            for (std::size_t j = 0; j < limb.joint_count(); ++j) {
                try {
                    actuation_analysis(limb, static_cast<int>(j));
                    actuated = static_cast<int>(j);
                    break;
                } catch (const Error&) {
                    continue;
                }
            }
            if (actuated < 0) {
                ok = false;
                break;
            }
            for (const Screw& w : constraint_wrench_space(limb)) {
                constraints.push_back(w);
            }
            robot.limbs.push_back(std::move(limb));
            robot.actuated.push_back(actuated);
        }
        if (!ok) continue;

        Eigen::MatrixXd gcv(3, constraints.size());
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            gcv.col(i) = constraints[i].dir;
        }
        if (detail::numeric_rank(gcv) == 3 && detail::numeric_rank(gcv, 1e-4) == 3) {
            return robot;
        }
    }
    throw_error(Errc::exhausted_resampling, "could not assemble an independent 3-limb robot");
}

} // namespace so3limb
