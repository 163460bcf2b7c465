#include "so3limb/constraint.hpp"

#include <algorithm>
#include <sstream>

#include "linalg.hpp"

namespace so3limb {

namespace {

/// Pairing matrix: row i applied to wrench coordinates [f; m] gives the
/// Klein product of joint twist i with the wrench.
Eigen::MatrixXd pairing_matrix(const LimbModel& limb) {
    Eigen::MatrixXd p(limb.twists.size(), 6);
    for (std::size_t i = 0; i < limb.twists.size(); ++i) {
        p.row(i).head<3>() = limb.twists[i].mom.transpose();
        p.row(i).tail<3>() = limb.twists[i].dir.transpose();
    }
    return p;
}

bool parallel_dirs(const Vec3& a, const Vec3& b, double tol = kRelTol) {
    return a.normalized().cross(b.normalized()).norm() <= tol;
}

/// Largest set of revolute joints sharing one direction.
std::vector<int> largest_parallel_revolute_group(const LimbModel& limb) {
    std::vector<int> best;
    const auto& joints = limb.spec.joints;
    for (std::size_t i = 0; i < joints.size(); ++i) {
        if (joints[i].type != JointType::Revolute) continue;
        std::vector<int> group{static_cast<int>(i)};
        for (std::size_t j = i + 1; j < joints.size(); ++j) {
            if (joints[j].type != JointType::Revolute) continue;
            if (parallel_dirs(joints[i].direction, joints[j].direction)) {
                group.push_back(static_cast<int>(j));
            }
        }
        if (group.size() > best.size()) best = group;
    }
    return best;
}

// ---- predicate leaves -----------------------------------------------------
//
// Comparisons are up to scale: both arguments are normalized, and a vanishing
// argument satisfies a cross leaf (a zero offset lies on every line through
// the reference) but is treated as satisfying dot leaves as well.

struct ChecklistBuilder {
    std::vector<ConditionCheck> items;

    static double cross_residual(const Vec3& a, const Vec3& b) {
        const double na = a.norm();
        const double nb = b.norm();
        if (na <= kAbsFloor || nb <= kAbsFloor) return 0.0;
        return (a / na).cross(b / nb).norm();
    }

    static double dot_residual(const Vec3& a, const Vec3& b) {
        const double na = a.norm();
        const double nb = b.norm();
        if (na <= kAbsFloor || nb <= kAbsFloor) return 0.0;
        return std::abs((a / na).dot(b / nb));
    }

    bool add(const std::string& name, double residual) {
        const bool ok = residual <= kRelTol;
        items.push_back({name, ok, residual});
        return ok;
    }

    bool add_cross(const std::string& name, const Vec3& a, const Vec3& b) {
        return add(name, cross_residual(a, b));
    }

    bool add_dot(const std::string& name, const Vec3& a, const Vec3& b) {
        return add(name, dot_residual(a, b));
    }
};

/// Axis-through-point predicates for every marked joint of one intersect
/// group. When the group's point is the center this is s_i x l_i = 0; for an
/// off-center group the common point is recovered from the axes and every
/// unmarked joint must in addition be coplanar with the line from the center
/// to that point (the candidate constraint-force line).
bool add_concurrency_items(ChecklistBuilder& b, const LimbModel& limb,
                           const VariantDescriptor& variant, int group) {
    const std::vector<int> marked = variant.marked_positions(MarkerKind::Intersect, group);
    bool ok = true;
    if (variant.intersection_at_center) {
        for (int j : marked) {
            const std::string k = std::to_string(j + 1);
            ok &= b.add_cross("cross(s" + k + ",l" + k + ")", limb.spec.joints[j].direction,
                              limb.joint_offset(j));
        }
        return ok;
    }

    std::vector<JointSpec> marked_joints;
    for (int j : marked) marked_joints.push_back(limb.spec.joints[j]);
    std::optional<Vec3> common;
    try {
        common = axes_common_point(marked_joints);
    } catch (const Error&) {
        common = std::nullopt;
    }
    if (!common) {
        b.add("axes_common_point(marked)", 1.0);
        return false;
    }
    for (int j : marked) {
        ok &= b.add_cross("cross(s" + std::to_string(j + 1) + ", p" + std::to_string(j + 1) + "-q)",
                          limb.spec.joints[j].direction, limb.spec.joints[j].point - *common);
    }
    // The candidate force line joins the center and the off-center point.
    const Vec3 line = *common - limb.spec.center;
    if (line.norm() <= kAbsFloor) return ok;
    for (std::size_t j = 0; j < limb.spec.joints.size(); ++j) {
        if (std::find(marked.begin(), marked.end(), static_cast<int>(j)) != marked.end()) continue;
        const JointSpec& joint = limb.spec.joints[j];
        if (joint.type == JointType::Prismatic) {
            ok &= b.add_dot("dot(d" + std::to_string(j + 1) + ", q-c)", joint.direction, line);
        } else {
            const Vec3 n = joint.direction.normalized().cross(line.normalized());
            ok &= b.add("coplanar(s" + std::to_string(j + 1) + ", q-c)",
                        n.norm() <= kAbsFloor
                            ? 0.0
                            : ChecklistBuilder::dot_residual(n, limb.joint_offset(j)));
        }
    }
    return ok;
}

struct FiveCaseIRoles {
    // Equation-order roles for the 5$0 limb with one parallel R pair:
    // joints 1,2 are the pair, 3..5 the remaining revolutes.
    int e1, e2, e3, e4, e5;
};

std::optional<FiveCaseIRoles> find_parallel_pair_roles(const LimbModel& limb) {
    const auto& joints = limb.spec.joints;
    if (joints.size() != 5) return std::nullopt;
    const std::vector<int> group = largest_parallel_revolute_group(limb);
    if (group.size() != 2) return std::nullopt;
    FiveCaseIRoles r{};
    r.e1 = group[0];
    r.e2 = group[1];
    std::vector<int> rest;
    for (int j = 0; j < 5; ++j) {
        if (j != r.e1 && j != r.e2) rest.push_back(j);
    }
    r.e3 = rest[0];
    r.e4 = rest[1];
    r.e5 = rest[2];
    return r;
}

ConditionChecklist checklist_5s0_parallel_pair(const LimbModel& limb, const FiveCaseIRoles& r) {
    const Vec3 s1 = limb.spec.joints[r.e1].direction.normalized();
    const Vec3 s3 = limb.spec.joints[r.e3].direction.normalized();
    const Vec3 s4 = limb.spec.joints[r.e4].direction.normalized();
    const Vec3 l1 = limb.joint_offset(r.e1);
    const Vec3 l2 = limb.joint_offset(r.e2);
    const Vec3 l3 = limb.joint_offset(r.e3);
    const Vec3 l4 = limb.joint_offset(r.e4);
    const Vec3 l5 = limb.joint_offset(r.e5);
    const Vec3 l12 = l2 - l1;
    const Vec3 l34 = l4 - l3;

    ConditionChecklist out;

    // Sub-case I: restriction direction along the pair direction.
    {
        ChecklistBuilder b;
        bool ok = b.add("cross(s1,l12)=0 or cross(s3,l12)=0",
                        std::min(ChecklistBuilder::cross_residual(s1, l12),
                                 ChecklistBuilder::cross_residual(s3, l12)));
        ok &= b.add("cross(s1,l3)=0 or cross(s3,l3)=0",
                    std::min(ChecklistBuilder::cross_residual(s1, l3),
                             ChecklistBuilder::cross_residual(s3, l3)));
        ok &= b.add("cross(s4,l4)=0 or cross(s1,l4)=0",
                    std::min(ChecklistBuilder::cross_residual(s4, l4),
                             ChecklistBuilder::cross_residual(s1, l4)));
        ok &= b.add("dot(s3,l5)=0 and (dot(s1,l5)=0 or dot(s3,s1)=0)",
                    std::max(ChecklistBuilder::dot_residual(s3, l5),
                             std::min(ChecklistBuilder::dot_residual(s1, l5),
                                      ChecklistBuilder::dot_residual(s3, s1))));
        if (ok) {
            out.items = b.items;
            out.overall = true;
            out.subcase = "I";
            return out;
        }
        out.items = b.items;
    }

    // Sub-case II: restriction direction along the pair offset l12.
    {
        ChecklistBuilder b;
        bool ok = b.add("cross(s3,l12)=0 or cross(s3,l34)=0 or cross(l12,l34)=0",
                        std::min({ChecklistBuilder::cross_residual(s3, l12),
                                  ChecklistBuilder::cross_residual(s3, l34),
                                  ChecklistBuilder::cross_residual(l12, l34)}));
        ok &= b.add("cross(l1,s1)=0 or cross(l1,l2)=0",
                    std::min(ChecklistBuilder::cross_residual(l1, s1),
                             ChecklistBuilder::cross_residual(l1, l2)));
        ok &= b.add("cross(s3,l3)=0 or cross(s3,l12)=0 or cross(l3,l12)=0",
                    std::min({ChecklistBuilder::cross_residual(s3, l3),
                              ChecklistBuilder::cross_residual(s3, l12),
                              ChecklistBuilder::cross_residual(l3, l12)}));
        ok &= b.add("cross(s4,l4)=0 or cross(s4,l12)=0 or cross(l4,l12)=0",
                    std::min({ChecklistBuilder::cross_residual(s4, l4),
                              ChecklistBuilder::cross_residual(s4, l12),
                              ChecklistBuilder::cross_residual(l4, l12)}));
        ok &= b.add("dot(l5,s3)=0 and (dot(l12,s3)=0 or dot(l5,s1)=0)",
                    std::max(ChecklistBuilder::dot_residual(l5, s3),
                             std::min(ChecklistBuilder::dot_residual(l12, s3),
                                      ChecklistBuilder::dot_residual(l5, s1))));
        for (const ConditionCheck& item : b.items) out.items.push_back(item);
        if (ok) {
            out.overall = true;
            out.subcase = "II";
            return out;
        }
    }

    out.overall = false;
    out.subcase = "none";
    return out;
}

ConditionChecklist checklist_5s0(const LimbModel& limb, const VariantDescriptor& variant) {
    ConditionChecklist out;
    if (variant.case_tag == CaseTag::II) {
        // Three parallel revolutes plus an intersecting pair; equation roles:
        // s1 = group direction, joints 4 and 5 are the intersecting pair in
        // marker order with s5 orthogonal to both s1 and s4.
        const std::vector<int> ppos = variant.marked_positions(MarkerKind::Parallel);
        const std::vector<int> ipos = variant.marked_positions(MarkerKind::Intersect);
        ChecklistBuilder b;
        if (ppos.size() != 3 || ipos.size() != 2) {
            throw_error(Errc::system_mismatch, "5$0 case II expects 3 parallel + 2 intersecting");
        }
        const Vec3 u = limb.spec.joints[ppos[0]].direction.normalized();
        const Vec3 s4 = limb.spec.joints[ipos[0]].direction.normalized();
        const Vec3 l4 = limb.joint_offset(ipos[0]);
        const Vec3 l5 = limb.joint_offset(ipos[1]);
        bool ok = true;
        for (std::size_t k = 1; k < ppos.size(); ++k) {
            ok &= b.add_cross("parallel(s" + std::to_string(ppos[k] + 1) + ", group)",
                              limb.spec.joints[ppos[k]].direction, u);
        }
        ok &= b.add("cross(s4,l4)=0 or cross(s1,l4)=0",
                    std::min(ChecklistBuilder::cross_residual(s4, l4),
                             ChecklistBuilder::cross_residual(u, l4)));
        ok &= b.add("dot(s4,l5)=0 and (dot(s4,l5)=0 or dot(s4,s1)=0)",
                    std::max(ChecklistBuilder::dot_residual(s4, l5),
                             std::min(ChecklistBuilder::dot_residual(s4, l5),
                                      ChecklistBuilder::dot_residual(s4, u))));
        out.items = b.items;
        out.overall = ok;
        out.subcase = "I";
        return out;
    }

    // Case I rows are the concurrent triples. A limb that instead presents a
    // two-revolute parallel pair is checked against the parallel-pair
    // sub-case lists.
    if (const auto roles = find_parallel_pair_roles(limb)) {
        return checklist_5s0_parallel_pair(limb, *roles);
    }
    ChecklistBuilder b;
    const bool ok = add_concurrency_items(b, limb, variant, 0);
    out.items = b.items;
    out.overall = ok;
    out.subcase = "concurrent";
    return out;
}

ConditionChecklist checklist_4s0_1sinf(const LimbModel& limb, const VariantDescriptor& variant) {
    ConditionChecklist out;
    if (variant.case_tag == CaseTag::I) {
        ChecklistBuilder b;
        const bool ok = add_concurrency_items(b, limb, variant, 0);
        out.items = b.items;
        out.overall = ok;
        out.subcase = "concurrent";
        return out;
    }

    // Case II roles: parallel revolute pair = equation joints 1,2 (direction
    // s1), intersecting pair = joints 3,4, prismatic = joint 5.
    const std::vector<int> ppos = variant.marked_positions(MarkerKind::Parallel);
    const std::vector<int> ipos = variant.marked_positions(MarkerKind::Intersect);
    std::vector<int> prev;
    int ppris = -1;
    for (int j : ppos) {
        if (variant.joints[j].type == JointType::Prismatic) ppris = j;
        else prev.push_back(j);
    }
    if (prev.size() != 2 || ipos.size() != 2 || ppris < 0) {
        throw_error(Errc::system_mismatch, "4$0-1$inf case II expects an R pair, an i pair and a P");
    }
    const Vec3 s1 = limb.spec.joints[prev[0]].direction.normalized();
    const Vec3 s3 = limb.spec.joints[ipos[0]].direction.normalized();
    const Vec3 s5 = limb.spec.joints[ppris].direction.normalized();
    const Vec3 l1 = limb.joint_offset(prev[0]);
    const Vec3 l2 = limb.joint_offset(prev[1]);
    const Vec3 l3 = limb.joint_offset(ipos[0]);
    const Vec3 l4 = limb.joint_offset(ipos[1]);
    const Vec3 l12 = l2 - l1;

    // Sub-case I: restriction direction along the pair direction s1.
    {
        ChecklistBuilder b;
        bool ok = b.add_cross("parallel(pair)", limb.spec.joints[prev[1]].direction, s1);
        ok &= b.add_dot("dot(s1,s5)=0", s1, s5);
        ok &= b.add("cross(s3,l3)=0 or cross(s1,l3)=0",
                    std::min(ChecklistBuilder::cross_residual(s3, l3),
                             ChecklistBuilder::cross_residual(s1, l3)));
        ok &= b.add("dot(l4,s3)=0 and (dot(s1,l4)=0 or dot(s3,s1)=0)",
                    std::max(ChecklistBuilder::dot_residual(l4, s3),
                             std::min(ChecklistBuilder::dot_residual(s1, l4),
                                      ChecklistBuilder::dot_residual(s3, s1))));
        out.items = b.items;
        if (ok) {
            out.overall = true;
            out.subcase = "I";
            return out;
        }
    }

    // Sub-case II: restriction direction along the pair offset l12.
    {
        ChecklistBuilder b;
        bool ok = b.add_dot("dot(l12,s5)=0", l12, s5);
        ok &= b.add("cross(l1,s1)=0 or cross(s1,l2)=0 or cross(l1,l2)=0",
                    std::min({ChecklistBuilder::cross_residual(l1, s1),
                              ChecklistBuilder::cross_residual(s1, l2),
                              ChecklistBuilder::cross_residual(l1, l2)}));
        ok &= b.add("dot(s3,l4)=0 and (dot(s1,l4)=0 or dot(l3,l12)=0)",
                    std::max(ChecklistBuilder::dot_residual(s3, l4),
                             std::min(ChecklistBuilder::dot_residual(s1, l4),
                                      ChecklistBuilder::dot_residual(l3, l12))));
        ok &= b.add("cross(l3,s3)=0 or cross(l12,s3)=0 or cross(l12,l3)=0",
                    std::min({ChecklistBuilder::cross_residual(l3, s3),
                              ChecklistBuilder::cross_residual(l12, s3),
                              ChecklistBuilder::cross_residual(l12, l3)}));
        for (const ConditionCheck& item : b.items) out.items.push_back(item);
        out.overall = ok;
        out.subcase = ok ? "II" : "none";
        return out;
    }
}

ConditionChecklist checklist_3s0_2sinf(const LimbModel& limb, const VariantDescriptor& variant) {
    ConditionChecklist out;
    ChecklistBuilder b;
    if (variant.case_tag == CaseTag::I) {
        const bool ok = add_concurrency_items(b, limb, variant, 0);
        out.items = b.items;
        out.overall = ok;
        out.subcase = "concurrent";
        return out;
    }

    // Case II: intersecting pair through the center plus a parallel block of
    // one revolute and the two prismatics; the constraint force direction is
    // the cross of the prismatic directions, so both must be orthogonal to
    // the block revolute's direction.
    const std::vector<int> ipos = variant.marked_positions(MarkerKind::Intersect);
    const std::vector<int> ppos = variant.marked_positions(MarkerKind::Parallel);
    int block_r = -1;
    std::vector<int> pris;
    for (int j : ppos) {
        if (variant.joints[j].type == JointType::Revolute) block_r = j;
        else pris.push_back(j);
    }
    if (ipos.size() != 2 || block_r < 0 || pris.size() != 2) {
        throw_error(Errc::system_mismatch, "3$0-2$inf case II expects an i pair, a block R and 2 P");
    }
    bool ok = true;
    for (int j : ipos) {
        ok &= b.add_cross("cross(s" + std::to_string(j + 1) + ",l" + std::to_string(j + 1) + ")",
                          limb.spec.joints[j].direction, limb.joint_offset(j));
    }
    const Vec3 u = limb.spec.joints[block_r].direction.normalized();
    for (int j : pris) {
        ok &= b.add_dot("dot(d" + std::to_string(j + 1) + ", block)", limb.spec.joints[j].direction, u);
    }
    out.items = b.items;
    out.overall = ok;
    out.subcase = "I";
    return out;
}

ConditionChecklist checklist_all_marked_concurrent(const LimbModel& limb,
                                                   const VariantDescriptor& variant) {
    ConditionChecklist out;
    ChecklistBuilder b;
    const bool ok = add_concurrency_items(b, limb, variant, 0);
    out.items = b.items;
    out.overall = ok;
    out.subcase = "concurrent";
    return out;
}

ConditionChecklist checklist_4s0(const LimbModel& limb, const VariantDescriptor& variant) {
    // All four axes must run through the center (the table marks three; the
    // fourth is forced by the stated condition, which is what makes the row
    // redundant).
    ConditionChecklist out;
    ChecklistBuilder b;
    bool ok = true;
    for (std::size_t j = 0; j < limb.spec.joints.size(); ++j) {
        ok &= b.add_cross("cross(s" + std::to_string(j + 1) + ",l" + std::to_string(j + 1) + ")",
                          limb.spec.joints[j].direction, limb.joint_offset(j));
    }
    (void)variant;
    out.items = b.items;
    out.overall = ok;
    out.subcase = "concurrent";
    return out;
}

} // namespace

std::vector<Screw> constraint_wrench_space(const LimbModel& limb) {
    int rank = 0;
    const Eigen::MatrixXd basis = detail::nullspace(pairing_matrix(limb), &rank);
    std::vector<Screw> wrenches;
    wrenches.reserve(basis.cols());
    for (int c = 0; c < basis.cols(); ++c) {
        wrenches.push_back(Screw::from_coords(basis.col(c), ScrewKind::Wrench));
    }
    return wrenches;
}

Vec3 closed_form_direction_5system(const LimbModel& limb) {
    if (limb.zero_pitch_count != 5 || limb.infinite_pitch_count != 0) {
        throw_error(Errc::not_five_system, "limb signature must be five revolute joints");
    }
    // Moments about joint 5's own axis point; the direction block of the
    // constraint wrench does not depend on the reference point.
    const Vec3 ref = limb.spec.joints[4].point;
    std::array<Vec3, 5> s;
    std::array<Vec3, 5> l;
    for (int i = 0; i < 5; ++i) {
        s[i] = limb.spec.joints[i].direction.normalized();
        l[i] = limb.spec.joints[i].point - ref;
    }
    auto coeff = [&](int a, int b) { return s[4].dot(s[a - 1].cross(s[b - 1])); };
    auto moment_cross = [&](int c, int d) {
        return (l[c - 1].cross(s[c - 1])).cross(l[d - 1].cross(s[d - 1])).eval();
    };
    return -coeff(4, 3) * moment_cross(2, 1)
           + coeff(3, 1) * moment_cross(4, 2)
           - coeff(4, 1) * moment_cross(3, 2)
           - coeff(3, 2) * moment_cross(4, 1)
           - coeff(2, 1) * moment_cross(4, 3)
           + coeff(4, 2) * moment_cross(3, 1);
}

bool check_so3_necessary(const LimbModel& limb) {
    const Eigen::MatrixXd m = limb_twist_matrix(limb);
    const int rank = detail::numeric_rank(m);
    if (rank < 3 || rank > 5) return false;
    const std::vector<Screw> wrenches = constraint_wrench_space(limb);
    if (wrenches.empty()) return false;
    for (const Screw& w : wrenches) {
        if (w.mom.norm() > kRelTol) return false;
    }
    return true;
}

VariantClass classify_limb(const LimbModel& limb) {
    VariantClass cls;
    cls.system = system_from_counts(limb.zero_pitch_count, limb.infinite_pitch_count);
    switch (cls.system) {
        case SystemFamily::FiveZero:
            cls.case_tag =
                largest_parallel_revolute_group(limb).size() >= 3 ? CaseTag::II : CaseTag::I;
            break;
        case SystemFamily::FourZeroOneInf:
            cls.case_tag =
                largest_parallel_revolute_group(limb).size() >= 2 ? CaseTag::II : CaseTag::I;
            break;
        case SystemFamily::ThreeZeroTwoInf: {
            // Case II pairs both prismatic directions orthogonally with a
            // non-central revolute; three central revolutes are Case I.
            bool case2 = false;
            if (limb.category_a_count() < 3) {
                std::vector<Vec3> pris;
                for (const JointSpec& j : limb.spec.joints) {
                    if (j.type == JointType::Prismatic) pris.push_back(j.direction.normalized());
                }
                for (std::size_t j = 0; j < limb.spec.joints.size(); ++j) {
                    const JointSpec& joint = limb.spec.joints[j];
                    if (joint.type != JointType::Revolute) continue;
                    if (limb.categories[j] == JointCategory::A) continue;
                    const Vec3 u = joint.direction.normalized();
                    if (pris.size() == 2 && std::abs(u.dot(pris[0])) <= kRelTol &&
                        std::abs(u.dot(pris[1])) <= kRelTol) {
                        case2 = true;
                    }
                }
            }
            cls.case_tag = case2 ? CaseTag::II : CaseTag::I;
            break;
        }
        case SystemFamily::FourZero:
        case SystemFamily::ThreeZero:
            cls.case_tag = CaseTag::I;
            break;
        case SystemFamily::ThreeZeroOneInf:
            cls.case_tag = CaseTag::II;
            break;
        case SystemFamily::Other:
            cls.case_tag = CaseTag::NotApplicable;
            break;
    }
    return cls;
}

ConditionChecklist check_case_conditions(const LimbModel& limb, const VariantDescriptor& variant) {
    if (limb.joint_count() != variant.joint_count()) {
        throw_error(Errc::system_mismatch, "joint counts differ");
    }
    for (std::size_t i = 0; i < variant.joints.size(); ++i) {
        if (variant.joints[i].type != limb.spec.joints[i].type) {
            throw_error(Errc::system_mismatch, "joint types differ at position " + std::to_string(i + 1));
        }
    }

    switch (variant.system) {
        case SystemFamily::FiveZero:
            return checklist_5s0(limb, variant);
        case SystemFamily::FourZeroOneInf:
            return checklist_4s0_1sinf(limb, variant);
        case SystemFamily::ThreeZeroTwoInf:
            return checklist_3s0_2sinf(limb, variant);
        case SystemFamily::FourZero:
            return checklist_4s0(limb, variant);
        case SystemFamily::ThreeZeroOneInf:
        case SystemFamily::ThreeZero:
            return checklist_all_marked_concurrent(limb, variant);
        case SystemFamily::Other:
            break;
    }
    throw_error(Errc::system_mismatch, "descriptor system family is not analyzable");
}

ActuationReport actuation_analysis(const LimbModel& limb, int actuated_index) {
    const int n = static_cast<int>(limb.joint_count());
    if (actuated_index < 0 || actuated_index >= n) {
        throw_error(Errc::index_out_of_range,
                    "actuated index " + std::to_string(actuated_index) + " for " +
                        std::to_string(n) + " joints");
    }

    const Eigen::MatrixXd pairing = pairing_matrix(limb);
    Eigen::MatrixXd passive(n - 1, 6);
    int row = 0;
    for (int i = 0; i < n; ++i) {
        if (i == actuated_index) continue;
        passive.row(row++) = pairing.row(i);
    }

    const Eigen::MatrixXd candidates = detail::nullspace(passive);
    const std::vector<Screw> constraints = constraint_wrench_space(limb);
    Eigen::MatrixXd cmat(6, constraints.size());
    for (std::size_t c = 0; c < constraints.size(); ++c) {
        cmat.col(c) = constraints[c].coords();
    }

    // Remove the constraint-wrench component; what is left must be a single
    // direction, otherwise the configuration does not define the actuation
    // wrench uniquely.
    Eigen::MatrixXd residual = candidates;
    if (constraints.size() > 0) {
        residual -= cmat * (cmat.transpose() * candidates);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= kRelTol) {
        throw_error(Errc::no_unique_actuation_wrench, "no wrench outside the constraint space");
    }
    if (sv.size() > 1 && sv(1) > kRelTol * sv(0)) {
        throw_error(Errc::no_unique_actuation_wrench, "actuation wrench direction is not unique");
    }
    Eigen::VectorXd w = svd.matrixU().col(0);
    detail::canonicalize_sign(w);

    ActuationReport report;
    Screw wrench = Screw::from_coords(w, ScrewKind::Wrench);
    report.raw_pairing = reciprocal_product(limb.twists[actuated_index], wrench);
    if (std::abs(report.raw_pairing) <= kRelTol) {
        throw_error(Errc::no_unique_actuation_wrench,
                    "candidate wrench is reciprocal to the actuated joint (locked)");
    }
    wrench.dir /= report.raw_pairing;
    wrench.mom /= report.raw_pairing;
    report.wrench = wrench;
    report.g_av_zero = wrench.dir.norm() <= kRelTol;
    report.pairings.reserve(n);
    for (int i = 0; i < n; ++i) {
        report.pairings.push_back(reciprocal_product(limb.twists[i], wrench));
    }
    return report;
}

ConstraintReport analyze_limb(const LimbModel& limb, const VariantDescriptor* checklist_descriptor) {
    ConstraintReport report;
    const Eigen::MatrixXd m = limb_twist_matrix(limb);
    report.twist_rank = detail::numeric_rank(m);
    report.rank_c1 = detail::numeric_rank(m.leftCols(3));
    report.rank_c2 = detail::numeric_rank(m.rightCols(3));
    report.constraint_wrenches = constraint_wrench_space(limb);
    report.restriction_twists.reserve(report.constraint_wrenches.size());
    for (const Screw& w : report.constraint_wrenches) {
        report.restriction_twists.push_back(elliptic_polar(w));
        report.max_moment_residual = std::max(report.max_moment_residual, w.mom.norm());
    }
    report.so3_necessary = check_so3_necessary(limb);
    report.redundant = limb.redundant_geometry() ||
                       report.twist_rank < static_cast<int>(limb.joint_count());
    report.classification = classify_limb(limb);

    std::ostringstream diag;
    diag << "twist rank " << report.twist_rank << ", constraint wrenches "
         << report.constraint_wrenches.size();
    report.diagnostics.push_back(diag.str());
    if (report.twist_rank < static_cast<int>(limb.joint_count())) {
        report.diagnostics.push_back("rank deficiency: dependent joint screws (redundant)");
    }
    if (limb.redundant_geometry()) {
        report.diagnostics.push_back("more than three category-A joints (redundant)");
    }

    if (checklist_descriptor) {
        report.checklist = check_case_conditions(limb, *checklist_descriptor);
    }
    return report;
}

} // namespace so3limb
