#pragma once

#include <optional>
#include <string>
#include <vector>

#include "so3limb/descriptor.hpp"
#include "so3limb/limb.hpp"

namespace so3limb {

/// One evaluated predicate leaf or clause of a case-condition list.
struct ConditionCheck {
    std::string name;
    bool passed = false;
    double value = 0.0; // residual the tolerance was applied to
};

struct ConditionChecklist {
    std::vector<ConditionCheck> items;
    bool overall = false;
    std::string subcase; // which sub-case (if any) carried the verdict
};

/// Constraint-side analysis of one limb about its rotation center.
struct ConstraintReport {
    std::vector<Screw> constraint_wrenches;  // orthonormal, canonical sign
    std::vector<Screw> restriction_twists;   // block swaps of the wrenches
    int twist_rank = 0;
    int rank_c1 = 0; // rank of the direction block of the twist matrix
    int rank_c2 = 0; // rank of the moment block
    bool so3_necessary = false;
    bool redundant = false;
    VariantClass classification;
    double max_moment_residual = 0.0; // wrench moment about the center
    std::optional<ConditionChecklist> checklist;
    std::vector<std::string> diagnostics;
};

/// Orthonormal basis of all wrenches reciprocal to every joint twist,
/// expressed about the limb center. Empty for full 6-system limbs.
std::vector<Screw> constraint_wrench_space(const LimbModel& limb);

/// Closed-form direction of the single constraint wrench of a 5-revolute
/// limb via the six-term triple/cross-product expansion. Moments are taken
/// about joint 5's axis point, which leaves the (reference-independent)
/// direction intact and is the arrangement under which the expansion holds.
Vec3 closed_form_direction_5system(const LimbModel& limb);

/// True iff the limb's constraint wrenches are pure forces through the
/// center (every restriction twist of infinite pitch) and the limb has at
/// least 3 degrees of freedom.
bool check_so3_necessary(const LimbModel& limb);

VariantClass classify_limb(const LimbModel& limb);

/// Evaluates the variant's printed case conditions on the limb. The
/// descriptor supplies the role mapping (which joints form the intersecting
/// pair, the parallel group, and so on).
ConditionChecklist check_case_conditions(const LimbModel& limb, const VariantDescriptor& variant);

struct ActuationReport {
    Screw wrench;                 // scaled so its pairing with the actuated joint is 1
    bool g_av_zero = false;       // force block vanishes about the center
    double raw_pairing = 0.0;     // pairing with the actuated twist before scaling
    std::vector<double> pairings; // pairing with every joint twist after scaling
};

/// The wrench reciprocal to all joint twists except the actuated one
/// (and outside the constraint-wrench space), about the limb center.
ActuationReport actuation_analysis(const LimbModel& limb, int actuated_index);

/// Full constraint report; evaluates the checklist when a descriptor is given.
ConstraintReport analyze_limb(const LimbModel& limb,
                              const VariantDescriptor* checklist_descriptor = nullptr);

} // namespace so3limb
