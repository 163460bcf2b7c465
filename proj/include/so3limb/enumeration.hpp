#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "so3limb/descriptor.hpp"
#include "so3limb/rate_kinematics.hpp"

namespace so3limb {

/// The full catalog of limb variants: deterministic, sorted, 73 entries.
const std::vector<VariantDescriptor>& catalog();

/// Looks a descriptor up by its canonical id.
const VariantDescriptor& catalog_lookup(const std::string& id);

/// All distinct orderings of the symbol multiset. `expected_count` of 0 skips
/// the cross-check against the stated row multiplicity.
std::vector<VariantDescriptor> expand_permutations(const std::vector<JointSymbol>& base_pattern,
                                                   int expected_count = 0);

struct CatalogCounts {
    std::map<SystemFamily, int> per_category; // filled for the catalog's own size
    int total_limbs = 0;
    long long symmetric = 0;
    long long asymmetric = 0;
    long long total_robots = 0;
};

/// Robot counts for a pool of `limb_count` limb types: symmetric = L,
/// total = L^2, asymmetric = L^2 - L.
CatalogCounts count_robots(int limb_count);

/// Random limb satisfying the descriptor by construction, deterministic per
/// seed. Marked joints are pinned exactly (axis points at the common point,
/// parallel directions bit-identical); free geometry is resampled until the
/// twist rank matches the descriptor's intent.
LimbModel instantiate_geometry(const VariantDescriptor& descriptor, std::uint64_t seed,
                               const Vec3& center);

struct VerificationReport {
    std::string descriptor_id;
    int trials = 0;
    int passes = 0;
    double max_moment_residual = 0.0;  // constraint wrench moments about the center
    double max_center_velocity = 0.0;  // residual of central rotations against the twist span
    bool redundant = false;
    bool checklist_all = true; // every trial satisfied its case conditions
    std::uint64_t seed = 0;
    std::string rng_name;
    std::vector<std::string> notes;

    /// Redundant rows report rank deficiency instead of passing.
    bool passed() const { return redundant || passes == trials; }
};

VerificationReport verify_variant(const VariantDescriptor& descriptor, int trials,
                                  std::uint64_t seed);

/// Three limbs sharing one rotation center with independent constraint
/// forces; one actuated joint per limb.
RobotModel build_robot(const std::array<VariantDescriptor, 3>& descriptors, std::uint64_t seed,
                       const Vec3& center = Vec3::Zero());

} // namespace so3limb
