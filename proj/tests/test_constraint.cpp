#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "so3limb/constraint.hpp"
#include "so3limb/sampling.hpp"

using namespace so3limb;

namespace {

LimbSpec spherical_3r() {
    LimbSpec spec;
    spec.center = Vec3::Zero();
    spec.joints = {JointSpec::revolute(Vec3::UnitX(), Vec3::Zero()),
                   JointSpec::revolute(Vec3::UnitY(), Vec3::Zero()),
                   JointSpec::revolute(Vec3::UnitZ(), Vec3::Zero())};
    return spec;
}

LimbModel random_5r(Sampler& rng) {
    LimbSpec spec;
    spec.center = Vec3::Zero();
    for (int j = 0; j < 5; ++j) {
        spec.joints.push_back(JointSpec::revolute(rng.unit_vector(), rng.point_in_cube()));
    }
    return build_limb(spec);
}

/// Independent oracle: nullspace of the pairing matrix computed directly
/// from raw SVD of rows [mom_i^T, dir_i^T].
Eigen::MatrixXd oracle_wrench_nullspace(const LimbModel& limb) {
    Eigen::MatrixXd p(limb.joint_count(), 6);
    for (std::size_t i = 0; i < limb.joint_count(); ++i) {
        p.row(i).head(3) = limb.twists[i].mom.transpose();
        p.row(i).tail(3) = limb.twists[i].dir.transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(p, Eigen::ComputeFullV);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > 1e-9 * svd.singularValues()(0)) ++rank;
    }
    return svd.matrixV().rightCols(6 - rank);
}

bool spans_match(const std::vector<Screw>& wrenches, const Eigen::MatrixXd& oracle) {
    if (static_cast<int>(wrenches.size()) != oracle.cols()) return false;
    Eigen::MatrixXd w(6, wrenches.size());
    for (std::size_t i = 0; i < wrenches.size(); ++i) w.col(i) = wrenches[i].coords();
    const Eigen::MatrixXd pw = w * w.transpose();
    const Eigen::MatrixXd po = oracle * oracle.transpose();
    return (pw - po).norm() <= 1e-9;
}

} // namespace

TEST_CASE("constraint wrenches of the spherical 3R limb are central forces") {
    const LimbModel limb = build_limb(spherical_3r());
    const std::vector<Screw> wrenches = constraint_wrench_space(limb);
    REQUIRE(wrenches.size() == 3);
    Mat3 dirs;
    for (int i = 0; i < 3; ++i) {
        CHECK(wrenches[i].mom.norm() <= 1e-12);
        dirs.col(i) = wrenches[i].dir;
    }
    CHECK(std::abs(std::abs(dirs.determinant()) - 1.0) <= 1e-12); // orthonormal span
}

TEST_CASE("constraint wrenches of a 3P limb are pure moments") {
    LimbSpec spec;
    spec.center = Vec3::Zero();
    spec.joints = {JointSpec::prismatic(Vec3::UnitX()), JointSpec::prismatic(Vec3::UnitY()),
                   JointSpec::prismatic(Vec3::UnitZ())};
    const std::vector<Screw> wrenches = constraint_wrench_space(build_limb(spec));
    REQUIRE(wrenches.size() == 3);
    for (const Screw& w : wrenches) {
        CHECK(w.dir.norm() <= 1e-12);
    }
}

TEST_CASE("generic 5-joint limb: one wrench, reciprocal to every joint twist") {
    Sampler rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const LimbModel limb = random_5r(rng);
        const std::vector<Screw> wrenches = constraint_wrench_space(limb);
        REQUIRE(wrenches.size() == 1);
        for (const Screw& t : limb.twists) {
            CHECK(std::abs(reciprocal_product(t, wrenches[0])) <= 1e-10);
        }
        CHECK(spans_match(wrenches, oracle_wrench_nullspace(limb)));
    }
}

TEST_CASE("dimension law: wrench count + twist rank = 6") {
    Sampler rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        LimbSpec spec;
        spec.center = Vec3::Zero();
        const int n = 3 + static_cast<int>(rng.uniform(0, 3));
        for (int j = 0; j < n; ++j) {
            if (rng.uniform01() < 0.3) {
                spec.joints.push_back(JointSpec::prismatic(rng.unit_vector()));
            } else if (rng.uniform01() < 0.3) {
                // deliberately degenerate: axis through the center
                spec.joints.push_back(JointSpec::revolute(rng.unit_vector(), Vec3::Zero()));
            } else {
                spec.joints.push_back(JointSpec::revolute(rng.unit_vector(), rng.point_in_cube()));
            }
        }
        const LimbModel limb = build_limb(spec);
        const ConstraintReport report = analyze_limb(limb);
        CHECK(static_cast<int>(report.constraint_wrenches.size()) + report.twist_rank == 6);
    }
}

TEST_CASE("restriction twists are exact block swaps of the wrenches") {
    Sampler rng(8);
    const LimbModel limb = random_5r(rng);
    const ConstraintReport report = analyze_limb(limb);
    REQUIRE(report.restriction_twists.size() == report.constraint_wrenches.size());
    for (std::size_t i = 0; i < report.restriction_twists.size(); ++i) {
        CHECK(report.restriction_twists[i].dir == report.constraint_wrenches[i].mom);
        CHECK(report.restriction_twists[i].mom == report.constraint_wrenches[i].dir);
        CHECK(report.restriction_twists[i].kind == ScrewKind::Twist);
    }
}

TEST_CASE("closed form direction agrees with the SVD nullspace on 100 seeded 5R limbs") {
    Sampler rng(100);
    for (int trial = 0; trial < 100; ++trial) {
        const LimbModel limb = random_5r(rng);
        const std::vector<Screw> wrenches = constraint_wrench_space(limb);
        REQUIRE(wrenches.size() == 1);
        const Vec3 closed = closed_form_direction_5system(limb);
        REQUIRE(closed.norm() > 1e-12);
        CHECK(cosine_distance(closed, wrenches[0].dir) <= 1e-8);
    }
}

TEST_CASE("closed form: four parallel directions give the zero vector") {
    Sampler rng(101);
    const Vec3 u = rng.unit_vector();
    LimbSpec spec;
    spec.center = Vec3::Zero();
    for (int j = 0; j < 4; ++j) {
        spec.joints.push_back(JointSpec::revolute(u, rng.point_in_cube()));
    }
    spec.joints.push_back(JointSpec::revolute(rng.unit_vector(), rng.point_in_cube()));
    CHECK(closed_form_direction_5system(build_limb(spec)).norm() <= 1e-12);
}

TEST_CASE("closed form on a three-parallel limb with a central pair") {
    Sampler rng(102);
    const Vec3 u = rng.unit_vector();
    LimbSpec spec;
    spec.center = Vec3::Zero();
    for (int j = 0; j < 3; ++j) {
        spec.joints.push_back(JointSpec::revolute(u, rng.point_in_cube()));
    }
    const Vec3 s4 = rng.unit_vector();
    spec.joints.push_back(JointSpec::revolute(s4, Vec3::Zero()));
    spec.joints.push_back(JointSpec::revolute(u.cross(s4).normalized(), Vec3::Zero()));
    const Vec3 dir = closed_form_direction_5system(build_limb(spec));
    REQUIRE(dir.norm() > 1e-12);
    CHECK(cosine_distance(dir, u) <= 1e-10);
}

TEST_CASE("closed form requires a five-revolute limb") {
    CHECK_THROWS_AS(closed_form_direction_5system(build_limb(spherical_3r())), Error);
}

TEST_CASE("so3 necessary condition") {
    CHECK(check_so3_necessary(build_limb(spherical_3r())));

    LimbSpec translational;
    translational.center = Vec3::Zero();
    translational.joints = {JointSpec::prismatic(Vec3::UnitX()),
                            JointSpec::prismatic(Vec3::UnitY()),
                            JointSpec::prismatic(Vec3::UnitZ())};
    CHECK(!check_so3_necessary(build_limb(translational)));

    Sampler rng(12);
    int unsound = 0;
    for (int trial = 0; trial < 20; ++trial) {
        if (!check_so3_necessary(random_5r(rng))) ++unsound;
    }
    CHECK(unsound == 20); // skew geometry never passes
}

TEST_CASE("classify_limb") {
    CHECK(classify_limb(build_limb(spherical_3r())) ==
          VariantClass{SystemFamily::ThreeZero, CaseTag::I});

    LimbSpec four_a = spherical_3r();
    four_a.joints.push_back(JointSpec::revolute(Vec3(1, 1, 1), Vec3::Zero()));
    const LimbModel redundant_limb = build_limb(four_a);
    CHECK(classify_limb(redundant_limb) == VariantClass{SystemFamily::FourZero, CaseTag::I});
    CHECK(analyze_limb(redundant_limb).redundant);

    Sampler rng(13);
    LimbSpec rrrpp;
    rrrpp.center = Vec3::Zero();
    rrrpp.joints = {JointSpec::revolute(Vec3::UnitX(), Vec3::Zero()),
                    JointSpec::revolute(Vec3::UnitY(), Vec3::Zero()),
                    JointSpec::revolute(Vec3::UnitZ(), Vec3::Zero()),
                    JointSpec::prismatic(rng.unit_vector()),
                    JointSpec::prismatic(rng.unit_vector())};
    CHECK(classify_limb(build_limb(rrrpp)) ==
          VariantClass{SystemFamily::ThreeZeroTwoInf, CaseTag::I});

    // three parallel revolutes force case II in the five-system
    const Vec3 u = rng.unit_vector();
    LimbSpec parallel5;
    parallel5.center = Vec3::Zero();
    for (int j = 0; j < 3; ++j) {
        parallel5.joints.push_back(JointSpec::revolute(u, rng.point_in_cube()));
    }
    const Vec3 s4 = rng.unit_vector();
    parallel5.joints.push_back(JointSpec::revolute(s4, Vec3::Zero()));
    parallel5.joints.push_back(JointSpec::revolute(u.cross(s4).normalized(), Vec3::Zero()));
    CHECK(classify_limb(build_limb(parallel5)) ==
          VariantClass{SystemFamily::FiveZero, CaseTag::II});
}

TEST_CASE("case conditions for the three-parallel five-system limb") {
    Sampler rng(14);
    const Vec3 u = rng.unit_vector();
    LimbSpec spec;
    spec.center = Vec3::Zero();
    for (int j = 0; j < 3; ++j) {
        spec.joints.push_back(JointSpec::revolute(u, rng.point_in_cube()));
    }
    const Vec3 s4 = rng.unit_vector();
    spec.joints.push_back(JointSpec::revolute(s4, Vec3::Zero()));
    spec.joints.push_back(JointSpec::revolute(u.cross(s4).normalized(), Vec3::Zero()));

    VariantDescriptor variant = parse_descriptor_id("5s0/II/R^p R^p R^p R^i R^i");
    const ConditionChecklist checklist = check_case_conditions(build_limb(spec), variant);
    CHECK(checklist.overall);
    CHECK(check_so3_necessary(build_limb(spec)));

    // moving joint 4 off the center with an offset not along s4 breaks item 1
    spec.joints[3].point = Vec3(0.3, 0.4, 0.5);
    if (std::abs(Vec3(0.3, 0.4, 0.5).normalized().dot(s4)) > 0.99) {
        spec.joints[3].point = Vec3(-0.5, 0.3, 0.2);
    }
    CHECK(!check_case_conditions(build_limb(spec), variant).overall);
}

TEST_CASE("case conditions for the central 3R-2P limb") {
    Sampler rng(15);
    LimbSpec spec;
    spec.center = Vec3::Zero();
    spec.joints = {JointSpec::revolute(Vec3::UnitX(), Vec3::Zero()),
                   JointSpec::revolute(Vec3::UnitY(), Vec3::Zero()),
                   JointSpec::revolute(Vec3::UnitZ(), Vec3::Zero()),
                   JointSpec::prismatic(rng.unit_vector()),
                   JointSpec::prismatic(rng.unit_vector())};
    const VariantDescriptor variant = parse_descriptor_id("3s0-2sinf/I/R^i R^i R^i P P");
    CHECK(check_case_conditions(build_limb(spec), variant).overall);

    // l1 = (0.3, 0, 0) violates the stated condition
    spec.joints[0].point = Vec3(0.3, 0, 0);
    spec.joints[0].direction = Vec3::UnitZ();
    spec.joints[1].direction = Vec3::UnitX();
    spec.joints[2].direction = Vec3::UnitY();
    CHECK(!check_case_conditions(build_limb(spec), variant).overall);
}

TEST_CASE("case conditions reject mismatched systems") {
    const VariantDescriptor variant = parse_descriptor_id("5s0/I/R^i R^i R^i R R");
    CHECK_THROWS_AS(check_case_conditions(build_limb(spherical_3r()), variant), Error);
}

TEST_CASE("parallel-pair five-system limb satisfies the printed sub-case I list") {
    Sampler rng(16);
    const Vec3 s1 = rng.unit_vector();
    Vec3 s3 = rng.unit_vector();
    while (s3.cross(s1).norm() < 0.3) s3 = rng.unit_vector();
    const Vec3 s5 = s1.cross(s3).normalized();

    // pair of parallel revolutes offset along their own direction, then three
    // axes through the center with the last orthogonal to s1 and s3
    const Vec3 p1 = rng.point_in_cube();
    LimbSpec spec;
    spec.center = Vec3::Zero();
    spec.joints = {JointSpec::revolute(s1, p1),
                   JointSpec::revolute(s1, p1 + 0.7 * s1),
                   JointSpec::revolute(s3, Vec3::Zero()),
                   JointSpec::revolute(rng.unit_vector(), Vec3::Zero()),
                   JointSpec::revolute(s5, Vec3::Zero())};
    const LimbModel limb = build_limb(spec);

    const VariantDescriptor variant = parse_descriptor_id("5s0/I/R R R^i R^i R^i");
    const ConditionChecklist checklist = check_case_conditions(limb, variant);
    CHECK(checklist.overall);
    CHECK(checklist.subcase == "I");
    CHECK(check_so3_necessary(limb));
}

TEST_CASE("actuation analysis of the spherical 3R limb") {
    const LimbModel limb = build_limb(spherical_3r());
    const ActuationReport report = actuation_analysis(limb, 0);
    CHECK(report.g_av_zero);                    // pure moment: no linear coupling
    CHECK(report.wrench.dir.norm() <= 1e-12);
    CHECK(report.pairings[0] == doctest::Approx(1.0));
    CHECK(std::abs(report.pairings[1]) <= 1e-10);
    CHECK(std::abs(report.pairings[2]) <= 1e-10);
}

TEST_CASE("actuation analysis of a generic 5R limb") {
    Sampler rng(77);
    const LimbModel limb = random_5r(rng);
    const ActuationReport report = actuation_analysis(limb, 0);
    CHECK(report.pairings[0] == doctest::Approx(1.0));
    for (int i = 1; i < 5; ++i) {
        CHECK(std::abs(report.pairings[i]) <= 1e-9);
    }
    // the actuation wrench stays clear of the constraint space
    for (const Screw& c : constraint_wrench_space(limb)) {
        CHECK(std::abs(report.wrench.coords().dot(c.coords())) <= 1e-9);
    }
    CHECK_THROWS_AS(actuation_analysis(limb, 7), Error);
    CHECK_THROWS_AS(actuation_analysis(limb, -1), Error);
}

TEST_CASE("wrench space transforms equivariantly; verdict is invariant") {
    Sampler rng(200);
    for (int trial = 0; trial < 50; ++trial) {
        const LimbModel limb = trial % 2 ? random_5r(rng) : build_limb(spherical_3r());
        const RigidTransform x = rng.rigid_transform();

        LimbSpec moved = limb.spec;
        moved.center = x.rotation * limb.spec.center + x.translation;
        for (JointSpec& j : moved.joints) {
            j.direction = x.rotation * j.direction;
            j.point = x.rotation * j.point + x.translation;
        }
        const LimbModel moved_limb = build_limb(moved);

        const std::vector<Screw> w0 = constraint_wrench_space(limb);
        const std::vector<Screw> w1 = constraint_wrench_space(moved_limb);
        REQUIRE(w0.size() == w1.size());

        Eigen::MatrixXd mapped(6, w0.size());
        Eigen::MatrixXd target(6, w1.size());
        for (std::size_t i = 0; i < w0.size(); ++i) {
            // the transform carries geometry; wrenches about the center move
            // by the rotation-only adjoint
            RigidTransform rot_only{x.rotation, Vec3::Zero()};
            Eigen::VectorXd v = adjoint_transform(rot_only, w0[i]).coords();
            mapped.col(i) = v;
            target.col(i) = w1[i].coords();
        }
        const Eigen::MatrixXd pm = mapped * mapped.transpose();
        const Eigen::MatrixXd pt = target * target.transpose();
        CHECK((pm - pt).norm() <= 1e-9);

        CHECK(check_so3_necessary(limb) == check_so3_necessary(moved_limb));
    }
}

TEST_CASE("reciprocity bound over analyzed limbs") {
    Sampler rng(300);
    for (int trial = 0; trial < 100; ++trial) {
        const LimbModel limb = random_5r(rng);
        for (const Screw& w : constraint_wrench_space(limb)) {
            for (const Screw& t : limb.twists) {
                CHECK(std::abs(reciprocal_product(t, w)) <= 1e-9);
            }
        }
    }
}
