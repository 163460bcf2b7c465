#include "so3limb/enumeration.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace so3limb {

namespace {

std::vector<JointSymbol> all_revolute(int n) {
    return std::vector<JointSymbol>(static_cast<std::size_t>(n),
                                    JointSymbol{JointType::Revolute, MarkerKind::None, 0});
}

void mark(std::vector<JointSymbol>& joints, const std::vector<int>& positions, MarkerKind kind,
          int group = 0) {
    for (int p : positions) {
        joints[p].marker = kind;
        joints[p].group = group;
    }
}

struct CaseIILayout {
    std::vector<int> ipair;
    std::vector<int> block;
};

// The intersecting pair sits before, around, or after the parallel block.
const std::vector<CaseIILayout>& case_ii_layouts() {
    static const std::vector<CaseIILayout> kLayouts = {
        {{0, 1}, {2, 3, 4}},
        {{0, 4}, {1, 2, 3}},
        {{3, 4}, {0, 1, 2}},
    };
    return kLayouts;
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(pick.size()) == k) {
            out.push_back(pick);
            return;
        }
        for (int i = start; i < n; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<VariantDescriptor> build_catalog() {
    std::vector<VariantDescriptor> rows;

    // 5$0 case I: the ten concurrent revolute triples.
    for (const auto& triple : subsets_of_size(5, 3)) {
        VariantDescriptor d;
        d.system = SystemFamily::FiveZero;
        d.case_tag = CaseTag::I;
        d.joints = all_revolute(5);
        mark(d.joints, triple, MarkerKind::Intersect);
        rows.push_back(d);
    }

    // 5$0 case II: intersecting pair + three parallel revolutes; each row is
    // printed twice in the source table and the multiplicity is preserved.
    for (const CaseIILayout& layout : case_ii_layouts()) {
        for (int dup : {0, 2}) {
            VariantDescriptor d;
            d.system = SystemFamily::FiveZero;
            d.case_tag = CaseTag::II;
            d.joints = all_revolute(5);
            mark(d.joints, layout.ipair, MarkerKind::Intersect);
            mark(d.joints, layout.block, MarkerKind::Parallel);
            d.duplicate_index = dup;
            rows.push_back(d);
        }
    }

    // 4$0-1$inf case I: 20 = 5!/3! orderings of three marked revolutes, one
    // free revolute and the prismatic.
    {
        std::vector<JointSymbol> base = all_revolute(5);
        mark(base, {0, 1, 2}, MarkerKind::Intersect);
        base[4].type = JointType::Prismatic;
        for (VariantDescriptor d : expand_permutations(base, 20)) {
            d.case_tag = CaseTag::I;
            rows.push_back(d);
        }
    }

    // 4$0-1$inf case II: intersecting pair + parallel block of two revolutes
    // with the prismatic in one of the three block slots.
    for (const CaseIILayout& layout : case_ii_layouts()) {
        for (int slot = 0; slot < 3; ++slot) {
            VariantDescriptor d;
            d.system = SystemFamily::FourZeroOneInf;
            d.case_tag = CaseTag::II;
            d.joints = all_revolute(5);
            mark(d.joints, layout.ipair, MarkerKind::Intersect);
            mark(d.joints, layout.block, MarkerKind::Parallel);
            d.joints[layout.block[slot]].type = JointType::Prismatic;
            rows.push_back(d);
        }
    }

    // 3$0-2$inf case I: three central revolutes, prismatics anywhere.
    for (const auto& pair : subsets_of_size(5, 2)) {
        VariantDescriptor d;
        d.system = SystemFamily::ThreeZeroTwoInf;
        d.case_tag = CaseTag::I;
        d.joints = all_revolute(5);
        std::vector<int> revolutes;
        for (int j = 0; j < 5; ++j) {
            if (j == pair[0] || j == pair[1]) d.joints[j].type = JointType::Prismatic;
            else revolutes.push_back(j);
        }
        mark(d.joints, revolutes, MarkerKind::Intersect);
        rows.push_back(d);
    }

    // 3$0-2$inf case II: intersecting pair + block of one revolute and the
    // two prismatics.
    for (const CaseIILayout& layout : case_ii_layouts()) {
        for (int slot = 0; slot < 3; ++slot) {
            VariantDescriptor d;
            d.system = SystemFamily::ThreeZeroTwoInf;
            d.case_tag = CaseTag::II;
            d.joints = all_revolute(5);
            mark(d.joints, layout.ipair, MarkerKind::Intersect);
            mark(d.joints, layout.block, MarkerKind::Parallel);
            for (int s = 0; s < 3; ++s) {
                if (s != slot) d.joints[layout.block[s]].type = JointType::Prismatic;
            }
            rows.push_back(d);
        }
    }

    // 4$0: redundant rows (all four axes end up through the center).
    for (const auto& triple : subsets_of_size(4, 3)) {
        VariantDescriptor d;
        d.system = SystemFamily::FourZero;
        d.case_tag = CaseTag::I;
        d.joints = all_revolute(4);
        mark(d.joints, triple, MarkerKind::Intersect);
        d.redundant = true;
        rows.push_back(d);
    }

    // 3$0-1$inf: three central revolutes, prismatic anywhere.
    for (int p = 0; p < 4; ++p) {
        VariantDescriptor d;
        d.system = SystemFamily::ThreeZeroOneInf;
        d.case_tag = CaseTag::II;
        d.joints = all_revolute(4);
        std::vector<int> revolutes;
        for (int j = 0; j < 4; ++j) {
            if (j == p) d.joints[j].type = JointType::Prismatic;
            else revolutes.push_back(j);
        }
        mark(d.joints, revolutes, MarkerKind::Intersect);
        rows.push_back(d);
    }

    // 3$0: the typical case.
    {
        VariantDescriptor d;
        d.system = SystemFamily::ThreeZero;
        d.case_tag = CaseTag::I;
        d.joints = all_revolute(3);
        mark(d.joints, {0, 1, 2}, MarkerKind::Intersect);
        rows.push_back(d);
    }

    std::sort(rows.begin(), rows.end(), descriptor_order_less);
    return rows;
}

} // namespace

const std::vector<VariantDescriptor>& catalog() {
    static const std::vector<VariantDescriptor> kCatalog = build_catalog();
    return kCatalog;
}

const VariantDescriptor& catalog_lookup(const std::string& id) {
    static const std::map<std::string, std::size_t> kIndex = [] {
        std::map<std::string, std::size_t> index;
        const auto& rows = catalog();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            index.emplace(rows[i].id(), i);
        }
        return index;
    }();
    const auto it = kIndex.find(id);
    if (it == kIndex.end()) {
        throw_error(Errc::unknown_descriptor, "'" + id + "' is not a catalog descriptor");
    }
    return catalog()[it->second];
}

std::vector<VariantDescriptor> expand_permutations(const std::vector<JointSymbol>& base_pattern,
                                                   int expected_count) {
    auto key = [](const JointSymbol& s) {
        return std::make_tuple(static_cast<int>(s.type), static_cast<int>(s.marker), s.group);
    };
    std::vector<JointSymbol> pattern = base_pattern;
    std::sort(pattern.begin(), pattern.end(),
              [&](const JointSymbol& a, const JointSymbol& b) { return key(a) < key(b); });

    std::vector<VariantDescriptor> out;
    do {
        VariantDescriptor d;
        d.joints = pattern;
        d.system = system_from_counts(d.revolute_count(), d.prismatic_count());
        out.push_back(d);
    } while (std::next_permutation(
        pattern.begin(), pattern.end(),
        [&](const JointSymbol& a, const JointSymbol& b) { return key(a) < key(b); }));

    if (expected_count > 0 && static_cast<int>(out.size()) != expected_count) {
        throw_error(Errc::invalid_argument,
                    "expected " + std::to_string(expected_count) + " orderings, got " +
                        std::to_string(out.size()));
    }
    return out;
}

CatalogCounts count_robots(int limb_count) {
    if (limb_count < 1) {
        throw_error(Errc::invalid_argument, "limb count must be >= 1");
    }
    CatalogCounts counts;
    counts.total_limbs = limb_count;
    const long long l = limb_count;
    counts.symmetric = l;
    counts.total_robots = l * l;
    counts.asymmetric = l * l - l;
    if (limb_count == static_cast<int>(catalog().size())) {
        for (const VariantDescriptor& d : catalog()) {
            ++counts.per_category[d.system];
        }
    }
    return counts;
}

} // namespace so3limb
