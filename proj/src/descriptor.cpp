#include "so3limb/descriptor.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace so3limb {

namespace {

struct FamilyInfo {
    SystemFamily family;
    const char* code;
    const char* label;
    int revolute;
    int prismatic;
    int order; // catalog ordering, matching the source table
};

constexpr std::array<FamilyInfo, 6> kFamilies = {{
    {SystemFamily::FiveZero, "5s0", "5$0", 5, 0, 0},
    {SystemFamily::FourZeroOneInf, "4s0-1sinf", "4$0-1$inf", 4, 1, 1},
    {SystemFamily::ThreeZeroTwoInf, "3s0-2sinf", "3$0-2$inf", 3, 2, 2},
    {SystemFamily::FourZero, "4s0", "4$0", 4, 0, 3},
    {SystemFamily::ThreeZeroOneInf, "3s0-1sinf", "3$0-1$inf", 3, 1, 4},
    {SystemFamily::ThreeZero, "3s0", "3$0", 3, 0, 5},
}};

const FamilyInfo* family_info(SystemFamily system) {
    for (const FamilyInfo& f : kFamilies) {
        if (f.family == system) return &f;
    }
    return nullptr;
}

} // namespace

std::string system_code(SystemFamily system) {
    const FamilyInfo* f = family_info(system);
    return f ? f->code : "other";
}

std::string system_label(SystemFamily system) {
    const FamilyInfo* f = family_info(system);
    return f ? f->label : "other";
}

std::string case_code(CaseTag tag) {
    switch (tag) {
        case CaseTag::I: return "I";
        case CaseTag::II: return "II";
        case CaseTag::NotApplicable: return "-";
    }
    return "-";
}

SystemFamily system_from_counts(int revolute, int prismatic) {
    for (const FamilyInfo& f : kFamilies) {
        if (f.revolute == revolute && f.prismatic == prismatic) return f.family;
    }
    return SystemFamily::Other;
}

int VariantDescriptor::revolute_count() const {
    return static_cast<int>(
        std::count_if(joints.begin(), joints.end(),
                      [](const JointSymbol& j) { return j.type == JointType::Revolute; }));
}

int VariantDescriptor::prismatic_count() const {
    return static_cast<int>(joints.size()) - revolute_count();
}

std::string VariantDescriptor::type_string() const {
    std::string s;
    for (const JointSymbol& j : joints) {
        s += j.type == JointType::Revolute ? 'R' : 'P';
    }
    return s;
}

std::vector<int> VariantDescriptor::marked_positions(MarkerKind marker, int group) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < joints.size(); ++i) {
        if (joints[i].marker == marker && (group < 0 || joints[i].group == group)) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

int VariantDescriptor::group_count(MarkerKind marker) const {
    int max_group = -1;
    for (const JointSymbol& j : joints) {
        if (j.marker == marker) max_group = std::max(max_group, j.group);
    }
    return max_group + 1;
}

std::string VariantDescriptor::id() const {
    std::ostringstream os;
    os << system_code(system) << '/' << case_code(case_tag) << '/';
    const int i_groups = group_count(MarkerKind::Intersect);
    const int p_groups = group_count(MarkerKind::Parallel);
    bool first = true;
    for (const JointSymbol& j : joints) {
        if (!first) os << ' ';
        first = false;
        os << (j.type == JointType::Revolute ? 'R' : 'P');
        if (j.marker == MarkerKind::Intersect) {
            os << "^i";
            if (i_groups > 1) os << j.group + 1;
        } else if (j.marker == MarkerKind::Parallel) {
            os << "^p";
            if (p_groups > 1) os << j.group + 1;
        }
    }
    if (duplicate_index > 0) os << " #" << duplicate_index;
    return os.str();
}

VariantDescriptor parse_descriptor_id(const std::string& id) {
    auto fail = [&](const std::string& why) -> void {
        throw_error(Errc::unknown_descriptor, "'" + id + "': " + why);
    };

    const auto slash1 = id.find('/');
    const auto slash2 = slash1 == std::string::npos ? std::string::npos : id.find('/', slash1 + 1);
    if (slash2 == std::string::npos) fail("expected <system>/<case>/<pattern>");

    VariantDescriptor d;
    const std::string code = id.substr(0, slash1);
    d.system = SystemFamily::Other;
    for (const FamilyInfo& f : kFamilies) {
        if (code == f.code) d.system = f.family;
    }
    if (d.system == SystemFamily::Other) fail("unknown system code '" + code + "'");

    const std::string case_str = id.substr(slash1 + 1, slash2 - slash1 - 1);
    if (case_str == "I") d.case_tag = CaseTag::I;
    else if (case_str == "II") d.case_tag = CaseTag::II;
    else fail("unknown case tag '" + case_str + "'");

    std::istringstream tokens(id.substr(slash2 + 1));
    std::string tok;
    while (tokens >> tok) {
        if (tok[0] == '#') {
            d.duplicate_index = std::atoi(tok.c_str() + 1);
            if (d.duplicate_index < 2) fail("bad duplicate marker '" + tok + "'");
            continue;
        }
        JointSymbol sym;
        if (tok[0] == 'R') sym.type = JointType::Revolute;
        else if (tok[0] == 'P') sym.type = JointType::Prismatic;
        else fail("bad joint symbol '" + tok + "'");
        if (tok.size() > 1) {
            if (tok[1] != '^' || tok.size() < 3) fail("bad marker in '" + tok + "'");
            if (tok[2] == 'i') sym.marker = MarkerKind::Intersect;
            else if (tok[2] == 'p') sym.marker = MarkerKind::Parallel;
            else fail("bad marker kind in '" + tok + "'");
            if (tok.size() > 3) {
                const int g = std::atoi(tok.c_str() + 3);
                if (g < 1) fail("bad group index in '" + tok + "'");
                sym.group = g - 1;
            }
        }
        d.joints.push_back(sym);
    }
    if (d.joints.size() < 3 || d.joints.size() > 5) fail("pattern must have 3-5 joints");

    if (system_from_counts(d.revolute_count(), d.prismatic_count()) != d.system) {
        fail("joint pattern does not match the system family");
    }
    d.redundant = d.system == SystemFamily::FourZero;
    return d;
}

bool descriptor_order_less(const VariantDescriptor& a, const VariantDescriptor& b) {
    const FamilyInfo* fa = family_info(a.system);
    const FamilyInfo* fb = family_info(b.system);
    const int oa = fa ? fa->order : 99;
    const int ob = fb ? fb->order : 99;
    if (oa != ob) return oa < ob;
    if (a.case_tag != b.case_tag) return static_cast<int>(a.case_tag) < static_cast<int>(b.case_tag);
    const std::string ia = a.id();
    const std::string ib = b.id();
    return ia < ib;
}

} // namespace so3limb
