// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "so3limb/enumeration.hpp"
#include "so3limb/render.hpp"
#include "so3limb/sampling.hpp"

using namespace so3limb;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// 1. Catalog fidelity: 73 rows with the published per-category counts.
void criterion_catalog() {
    const auto start = std::chrono::steady_clock::now();
    const std::string rendered = render_catalog(ReportFormat::Csv, std::nullopt);
    const double elapsed = seconds_since(start);

    std::map<SystemFamily, int> per_category;
    for (const VariantDescriptor& d : catalog()) ++per_category[d.system];

    const bool counts_ok = catalog().size() == 73 &&
                           per_category[SystemFamily::FiveZero] == 16 &&
                           per_category[SystemFamily::FourZeroOneInf] == 29 &&
                           per_category[SystemFamily::ThreeZeroTwoInf] == 19 &&
                           per_category[SystemFamily::FourZero] == 4 &&
                           per_category[SystemFamily::ThreeZeroOneInf] == 4 &&
                           per_category[SystemFamily::ThreeZero] == 1;
    int rendered_rows = 0;
    std::istringstream lines(rendered);
    std::string line;
    std::getline(lines, line); // header
    while (std::getline(lines, line)) {
        if (!line.empty() && line[0] != '#') ++rendered_rows;
    }

    std::ostringstream detail;
    detail << "catalog: " << catalog().size() << " descriptors, rendered " << rendered_rows
           << ", per-category 16/29/19/4/4/1, " << elapsed << " s";
    report(1, counts_ok && rendered_rows == 73 && elapsed < 1.0, detail.str());
}

// 2. Counting claim: count_robots(73) reproduces the published triple.
void criterion_counts() {
    const CatalogCounts counts = count_robots(73);
    const bool ok =
        counts.symmetric == 73 && counts.asymmetric == 5256 && counts.total_robots == 5329;
    std::ostringstream detail;
    detail << "count_robots(73) = (" << counts.symmetric << ", " << counts.asymmetric << ", "
           << counts.total_robots << ")";
    report(2, ok, detail.str());
}

// 3. Necessary-condition harness over the whole catalog.
void criterion_harness() {
    const auto start = std::chrono::steady_clock::now();
    int redundant = 0;
    int failed = 0;
    double worst_residual = 0.0;
    for (const VariantDescriptor& d : catalog()) {
        const VerificationReport r = verify_variant(d, 10, 0);
        if (r.redundant) {
            ++redundant;
            continue;
        }
        worst_residual = std::max(worst_residual, r.max_moment_residual);
        if (r.passes != r.trials || r.max_moment_residual > 1e-8) ++failed;
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "verify --all --trials 10 --seed 0: " << (73 - redundant)
           << " non-redundant pass, worst moment residual " << format_real(worst_residual)
           << ", redundant " << redundant << ", " << elapsed << " s";
    report(3, failed == 0 && redundant == 4 && worst_residual <= 1e-8 && elapsed < 30.0,
           detail.str());
}

// 4. Closed-form direction vs the SVD nullspace over 100 seeded 5R limbs.
void criterion_closed_form() {
    Sampler rng(100);
    double worst = 0.0;
    int trials = 0;
    while (trials < 100) {
        LimbSpec spec;
        spec.center = Vec3::Zero();
        for (int j = 0; j < 5; ++j) {
            spec.joints.push_back(JointSpec::revolute(rng.unit_vector(), rng.point_in_cube()));
        }
        const LimbModel limb = build_limb(spec);
        const std::vector<Screw> wrenches = constraint_wrench_space(limb);
        if (wrenches.size() != 1) continue;
        ++trials;
        worst = std::max(worst,
                         cosine_distance(closed_form_direction_5system(limb), wrenches[0].dir));
    }
    report(4, worst <= 1e-8,
           "closed-form vs nullspace on 100 seeded 5$0 limbs: worst cosine distance " +
               format_real(worst));
}

// 5. Block-inverse identity over 1000 seeded well-conditioned matrices.
void criterion_block_inverse() {
    Sampler rng(808);
    auto random_mat3 = [&rng]() {
        Mat3 m;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
        }
        return m;
    };
    auto rcond = [](const Mat3& m) {
        Eigen::JacobiSVD<Mat3> svd(m);
        return svd.singularValues()(2) / svd.singularValues()(0);
    };

    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
        const Mat3 a = random_mat3();
        const Mat3 b = random_mat3();
        const Mat3 c = random_mat3();
        const Mat3 d = random_mat3();
        if (rcond(a) < 1e-2 || rcond(d - c * a.inverse() * b) < 1e-2) continue;
        ++done;
        JacobianBlocks blocks;
        blocks.g_av = a.transpose();
        blocks.g_aw = b.transpose();
        blocks.g_cv = c.transpose();
        blocks.g_cw = d.transpose();
        Mat6 m;
        m << a, b, c, d;
        worst = std::max(
            worst, (block_inverse(blocks).assemble() * m - Mat6::Identity()).cwiseAbs().maxCoeff());
    }
    report(5, worst <= 1e-10,
           "block inverse identity over 1000 seeded matrices: worst max-norm " +
               format_real(worst));
}

// 6. Projection contract.
void criterion_projection() {
    Sampler rng(909);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int m = 1 + static_cast<int>(rng.uniform(0, 5));
        JacobianBlocks blocks;
        blocks.g_av = Eigen::Matrix3Xd::Zero(3, 1);
        blocks.g_aw = Eigen::Matrix3Xd::Zero(3, 1);
        blocks.g_cv.resize(3, m);
        blocks.g_cw.resize(3, m);
        for (int i = 0; i < m; ++i) {
            blocks.g_cv.col(i) = rng.point_in_cube();
            blocks.g_cw.col(i) = rng.point_in_cube();
        }
        Eigen::MatrixXd gc(6, m);
        gc.topRows(3) = blocks.g_cv;
        gc.bottomRows(3) = blocks.g_cw;
        Mat6 p;
        for (int c = 0; c < 6; ++c) {
            Vec6 e = Vec6::Zero();
            e(c) = 1.0;
            p.col(c) = project_feasible(blocks, e);
        }
        worst = std::max({worst, (p * p - p).cwiseAbs().maxCoeff(),
                          (p - p.transpose()).cwiseAbs().maxCoeff(),
                          (gc.transpose() * p).cwiseAbs().maxCoeff()});
    }

    const VariantDescriptor& typical = catalog_lookup("3s0/I/R^i R^i R^i");
    const RobotModel robot = build_robot({typical, typical, typical}, 0);
    const JacobianBlocks blocks = assemble_extended_jacobian(robot);
    Vec6 xdot;
    xdot << 1, 2, 3, 0, 0, 0;
    const double translation_norm = project_feasible(blocks, xdot).norm();

    std::ostringstream detail;
    detail << "projector contracts worst " << format_real(worst)
           << "; constrained translation residual " << format_real(translation_norm);
    report(6, worst <= 1e-10 && translation_norm <= 1e-8, detail.str());
}

// 7. Platform SO(3) property over 20 symmetric and 20 asymmetric robots.
void criterion_platform() {
    std::vector<const VariantDescriptor*> pool;
    for (const VariantDescriptor& d : catalog()) {
        if (!d.redundant) pool.push_back(&d);
    }

    Sampler rng(777);
    auto pick = [&]() { return pool[static_cast<std::size_t>(rng.uniform(0, pool.size()))]; };

    int bad = 0;
    double worst_moment = 0.0;
    for (int i = 0; i < 40; ++i) {
        std::array<VariantDescriptor, 3> trio;
        if (i < 20) {
            const VariantDescriptor* d = pick();
            trio = {*d, *d, *d};
        } else {
            const VariantDescriptor* a = pick();
            const VariantDescriptor* b = pick();
            const VariantDescriptor* c = pick();
            while (b->id() == a->id()) b = pick();
            while (c->id() == a->id() || c->id() == b->id()) c = pick();
            trio = {*a, *b, *c};
        }
        const RobotModel robot = build_robot(trio, 1000 + i);
        const PlatformTwistSpace space = platform_twist_space(robot);
        bool ok = space.dimension == 3;
        for (const Screw& t : space.basis) {
            ok = ok && pitch(t).is_zero() && t.mom.norm() <= 1e-8;
            worst_moment = std::max(worst_moment, t.mom.norm());
        }
        if (!ok) ++bad;
    }
    std::ostringstream detail;
    detail << "20 symmetric + 20 asymmetric robots: dimension 3 with central zero-pitch bases, "
           << "worst center residual " << format_real(worst_moment);
    report(7, bad == 0 && worst_moment <= 1e-8, detail.str());
}

// 8. Geometric proposition suite.
void criterion_propositions() {
    const PropositionReport r = check_geometric_propositions(0, 1000);
    double worst = 0.0;
    for (double v : r.max_residual) worst = std::max(worst, v);
    report(8, r.all_within(1e-10),
           "four propositions x 1000 trials: worst residual " + format_real(worst));
}

// 9. Polarity involution and pitch invariance under seeded adjoints.
void criterion_polarity_invariance() {
    Sampler rng(2024);
    bool involution_exact = true;
    double worst_pitch = 0.0;
    bool infinite_preserved = true;
    for (int i = 0; i < 1000; ++i) {
        const Screw s{rng.unit_vector() * rng.uniform(0.1, 2.0), rng.point_in_cube(),
                      i % 2 ? ScrewKind::Twist : ScrewKind::Wrench};
        const Screw back = elliptic_polar(elliptic_polar(s));
        involution_exact =
            involution_exact && back.dir == s.dir && back.mom == s.mom && back.kind == s.kind;

        const RigidTransform x = rng.rigid_transform();
        const Screw zp = make_twist_revolute(rng.unit_vector(), rng.point_in_cube());
        const Screw fp = Screw::twist(zp.dir, zp.mom + rng.uniform(0.1, 2.0) * zp.dir);
        const PitchClass before = pitch(fp);
        const PitchClass after = pitch(adjoint_transform(x, fp));
        worst_pitch = std::max(worst_pitch, std::abs(after.value - before.value));
        infinite_preserved =
            infinite_preserved &&
            pitch(adjoint_transform(x, make_twist_prismatic(rng.unit_vector()))).is_infinite() &&
            pitch(adjoint_transform(x, zp)).is_zero();
    }
    std::ostringstream detail;
    detail << "involution exact: " << (involution_exact ? "yes" : "no")
           << "; pitch drift over 1000 adjoints " << format_real(worst_pitch)
           << "; infinite pitch preserved: " << (infinite_preserved ? "yes" : "no");
    report(9, involution_exact && worst_pitch <= 1e-10 && infinite_preserved, detail.str());
}

// 10. Determinism: two CLI runs produce byte-identical reports.
void criterion_determinism() {
#ifndef SO3LIMB_CLI_PATH
    report(10, false, "CLI path not configured");
#else
    const std::filesystem::path tmp = std::filesystem::temp_directory_path();
    const std::filesystem::path out1 = tmp / "so3limb_verify_run1.txt";
    const std::filesystem::path out2 = tmp / "so3limb_verify_run2.txt";
    const std::string base = std::string("\"") + SO3LIMB_CLI_PATH +
                             "\" verify --all --trials 10 --seed 0 --format csv";
    const int rc1 = std::system((base + " > " + out1.string() + " 2>/dev/null").c_str());
    const int rc2 = std::system((base + " > " + out2.string() + " 2>/dev/null").c_str());
    const std::string a = read_file(out1);
    const std::string b = read_file(out2);
    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
    std::ostringstream detail;
    detail << "two `verify --all --trials 10 --seed 0` runs: " << a.size() << " bytes, "
           << (a == b ? "identical" : "DIFFER") << ", exit codes " << rc1 << "/" << rc2;
    report(10, rc1 == 0 && rc2 == 0 && !a.empty() && a == b, detail.str());
#endif
}

} // namespace

int main() {
    criterion_catalog();
    criterion_counts();
    criterion_harness();
    criterion_closed_form();
    criterion_block_inverse();
    criterion_projection();
    criterion_platform();
    criterion_propositions();
    criterion_polarity_invariance();
    criterion_determinism();
    std::printf("%d/10 acceptance criteria passed\n", 10 - g_failures);
    return g_failures;
}
