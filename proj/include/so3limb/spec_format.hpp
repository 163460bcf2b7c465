#pragma once

#include <optional>
#include <string>
#include <vector>

#include "so3limb/limb.hpp"

namespace so3limb {

/// Result of parsing a limb spec document. Warnings carry accepted but
/// ignored content (a point on a prismatic joint).
struct ParsedLimbSpec {
    LimbSpec spec;
    std::optional<std::string> descriptor_id;
    std::vector<std::string> warnings;
};

/// Parses the line-oriented limb spec format:
///
///   # comment
///   center <x> <y> <z>
///   joint R dir <x> <y> <z> point <x> <y> <z>
///   joint P dir <x> <y> <z>
///   descriptor <catalog id>
///
/// Unknown keywords are rejected with a position-annotated ParseError.
ParsedLimbSpec parse_limb_spec(const std::string& text);

} // namespace so3limb
