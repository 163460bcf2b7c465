#pragma once

#include <string>
#include <vector>

#include "so3limb/limb.hpp"

namespace so3limb {

enum class SystemFamily {
    FiveZero,        // 5$0
    FourZeroOneInf,  // 4$0-1$inf
    ThreeZeroTwoInf, // 3$0-2$inf
    FourZero,        // 4$0 (redundant family)
    ThreeZeroOneInf, // 3$0-1$inf
    ThreeZero,       // 3$0
    Other,
};

enum class CaseTag { I, II, NotApplicable };

struct VariantClass {
    SystemFamily system = SystemFamily::Other;
    CaseTag case_tag = CaseTag::NotApplicable;

    bool operator==(const VariantClass&) const = default;
};

/// Short machine label, e.g. "5s0", "4s0-1sinf".
std::string system_code(SystemFamily system);

/// Display label matching the source notation, e.g. "5$0", "4$0-1$inf".
std::string system_label(SystemFamily system);

std::string case_code(CaseTag tag);

SystemFamily system_from_counts(int revolute, int prismatic);

enum class MarkerKind {
    None,
    Intersect, // axis runs through the group's common point
    Parallel,  // member of a parallel group
};

struct JointSymbol {
    JointType type = JointType::Revolute;
    MarkerKind marker = MarkerKind::None;
    int group = 0; // group number within the marker kind

    bool operator==(const JointSymbol&) const = default;
};

/// Symbolic encoding of one catalog row: the joint pattern with intersection
/// and parallel-group markers in physical (base-to-platform) order.
struct VariantDescriptor {
    SystemFamily system = SystemFamily::Other;
    CaseTag case_tag = CaseTag::NotApplicable;
    std::vector<JointSymbol> joints;
    bool redundant = false;
    int duplicate_index = 0; // 0 unless the source table prints the row twice
    bool intersection_at_center = true;

    std::size_t joint_count() const { return joints.size(); }
    int revolute_count() const;
    int prismatic_count() const;

    /// Physical joint letters, e.g. "RRRPP".
    std::string type_string() const;

    /// Canonical id, e.g. "5s0/II/R^i R^i R^p R^p R^p #2". Parsed back by
    /// parse_descriptor_id.
    std::string id() const;

    /// Positions (0-based) carrying the given marker, in order.
    std::vector<int> marked_positions(MarkerKind marker, int group = -1) const;

    /// Number of distinct groups of the given marker kind.
    int group_count(MarkerKind marker) const;
};

/// Inverse of VariantDescriptor::id for the symbolic part; system/case are
/// validated against the joint pattern.
VariantDescriptor parse_descriptor_id(const std::string& id);

bool descriptor_order_less(const VariantDescriptor& a, const VariantDescriptor& b);

} // namespace so3limb
