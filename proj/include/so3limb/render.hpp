#pragma once

#include <optional>
#include <string>
#include <vector>

#include "so3limb/constraint.hpp"
#include "so3limb/enumeration.hpp"
#include "so3limb/rate_kinematics.hpp"

namespace so3limb {

enum class ReportFormat { Human, Csv, JsonLines };

std::optional<ReportFormat> parse_format(const std::string& name);

/// Accepts a system code ("5s0") or the table label ("5$0").
std::optional<SystemFamily> parse_category(const std::string& name);

/// 12 significant digits; lowercase scientific notation outside
/// [1e-4, 1e6). Identical inputs render identically, which keeps reports
/// byte-stable and diffable.
std::string format_real(double value);

std::string render_catalog(ReportFormat format, std::optional<SystemFamily> category);

std::string render_constraint_report(const ConstraintReport& report, ReportFormat format);

std::string render_verification(const std::vector<VerificationReport>& reports,
                                ReportFormat format);

std::string render_robot(const RobotModel& robot, const PlatformVerdict& verdict,
                         const JacobianBlocks& blocks, ReportFormat format);

std::string render_props(const PropositionReport& report, ReportFormat format);

std::string render_counts(const CatalogCounts& counts, ReportFormat format);

} // namespace so3limb
