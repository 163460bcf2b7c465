#include "so3limb/render.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "linalg.hpp"
#include "so3limb/sampling.hpp"

namespace so3limb {

namespace {

using nlohmann::json;

json screw_json(const Screw& s) {
    return json{{"dir", {format_real(s.dir.x()), format_real(s.dir.y()), format_real(s.dir.z())}},
                {"mom", {format_real(s.mom.x()), format_real(s.mom.y()), format_real(s.mom.z())}}};
}

std::string screw_text(const Screw& s) {
    std::ostringstream os;
    os << '[' << format_real(s.dir.x()) << ' ' << format_real(s.dir.y()) << ' '
       << format_real(s.dir.z()) << " | " << format_real(s.mom.x()) << ' '
       << format_real(s.mom.y()) << ' ' << format_real(s.mom.z()) << ']';
    return os.str();
}

const char* bool_text(bool b) { return b ? "yes" : "no"; }

std::vector<std::pair<SystemFamily, int>> catalog_category_counts() {
    std::vector<std::pair<SystemFamily, int>> counts;
    for (const VariantDescriptor& d : catalog()) {
        bool found = false;
        for (auto& [family, n] : counts) {
            if (family == d.system) {
                ++n;
                found = true;
            }
        }
        if (!found) counts.emplace_back(d.system, 1);
    }
    return counts;
}

} // namespace

std::optional<ReportFormat> parse_format(const std::string& name) {
    if (name == "human") return ReportFormat::Human;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "jsonl") return ReportFormat::JsonLines;
    return std::nullopt;
}

std::optional<SystemFamily> parse_category(const std::string& name) {
    for (SystemFamily f :
         {SystemFamily::FiveZero, SystemFamily::FourZeroOneInf, SystemFamily::ThreeZeroTwoInf,
          SystemFamily::FourZero, SystemFamily::ThreeZeroOneInf, SystemFamily::ThreeZero}) {
        if (name == system_code(f) || name == system_label(f)) return f;
    }
    return std::nullopt;
}

std::string format_real(double value) {
    if (value == 0.0) return "0";
    const double mag = std::abs(value);
    char buf[48];
    if (mag >= 1e6 || mag < 1e-4) {
        std::snprintf(buf, sizeof buf, "%.11e", value);
    } else {
        std::snprintf(buf, sizeof buf, "%.12g", value);
    }
    return buf;
}

std::string render_catalog(ReportFormat format, std::optional<SystemFamily> category) {
    std::vector<const VariantDescriptor*> rows;
    for (const VariantDescriptor& d : catalog()) {
        if (!category || d.system == *category) rows.push_back(&d);
    }
    const CatalogCounts counts = count_robots(static_cast<int>(catalog().size()));

    std::ostringstream os;
    switch (format) {
        case ReportFormat::Human: {
            os << "catalog of limb variants (" << rows.size() << " rows)\n";
            std::string last_heading;
            for (const VariantDescriptor* d : rows) {
                std::string heading = system_label(d->system) + " case " + case_code(d->case_tag);
                if (heading != last_heading) {
                    os << "-- " << heading << "\n";
                    last_heading = heading;
                }
                os << "  " << d->id() << "  (" << d->type_string() << ")";
                if (d->redundant) os << "  [redundant case]";
                if (d->duplicate_index > 0) os << "  [printed twice in source]";
                if (d->system == SystemFamily::ThreeZero) os << "  [typical case]";
                os << "\n";
            }
            if (!category) {
                os << "per-category counts:";
                for (const auto& [family, n] : catalog_category_counts()) {
                    os << ' ' << system_label(family) << '=' << n;
                }
                os << "\n"
                   << counts.symmetric << " symmetric / " << counts.asymmetric
                   << " asymmetric / " << counts.total_robots << " total\n";
            }
            break;
        }
        case ReportFormat::Csv: {
            os << "id,category,case,types,redundant,duplicate\n";
            for (const VariantDescriptor* d : rows) {
                os << d->id() << ',' << system_code(d->system) << ',' << case_code(d->case_tag)
                   << ',' << d->type_string() << ',' << (d->redundant ? 1 : 0) << ','
                   << d->duplicate_index << "\n";
            }
            if (!category) {
                os << "# totals: symmetric=" << counts.symmetric
                   << " asymmetric=" << counts.asymmetric << " total=" << counts.total_robots
                   << "\n";
            }
            break;
        }
        case ReportFormat::JsonLines: {
            for (const VariantDescriptor* d : rows) {
                json j{{"id", d->id()},
                       {"category", system_code(d->system)},
                       {"case", case_code(d->case_tag)},
                       {"types", d->type_string()},
                       {"redundant", d->redundant},
                       {"duplicate", d->duplicate_index}};
                os << j.dump() << "\n";
            }
            if (!category) {
                json j{{"counts",
                        json{{"symmetric", counts.symmetric},
                             {"asymmetric", counts.asymmetric},
                             {"total", counts.total_robots}}}};
                os << j.dump() << "\n";
            }
            break;
        }
    }
    return os.str();
}

std::string render_constraint_report(const ConstraintReport& report, ReportFormat format) {
    std::ostringstream os;
    const std::string cls =
        system_code(report.classification.system) + "/" + case_code(report.classification.case_tag);
    switch (format) {
        case ReportFormat::Human: {
            os << "constraint analysis\n";
            os << "  classification: " << cls << "\n";
            os << "  twist rank: " << report.twist_rank << "  (C1 rank " << report.rank_c1
               << ", C2 rank " << report.rank_c2 << ")\n";
            os << "  constraint wrenches (" << report.constraint_wrenches.size() << "):\n";
            for (const Screw& w : report.constraint_wrenches) {
                os << "    " << screw_text(w) << "\n";
            }
            os << "  restriction twists:\n";
            for (const Screw& t : report.restriction_twists) {
                os << "    " << screw_text(t) << "\n";
            }
            os << "  max moment residual: " << format_real(report.max_moment_residual) << "\n";
            os << "  so3 necessary condition: " << bool_text(report.so3_necessary) << "\n";
            os << "  redundant: " << bool_text(report.redundant) << "\n";
            if (report.checklist) {
                os << "  case conditions (sub-case " << report.checklist->subcase << "):\n";
                for (const ConditionCheck& item : report.checklist->items) {
                    os << "    [" << (item.passed ? "pass" : "FAIL") << "] " << item.name
                       << "  residual " << format_real(item.value) << "\n";
                }
                os << "  checklist overall: " << bool_text(report.checklist->overall) << "\n";
            }
            for (const std::string& d : report.diagnostics) {
                os << "  note: " << d << "\n";
            }
            break;
        }
        case ReportFormat::Csv: {
            os << "field,value\n";
            os << "classification," << cls << "\n";
            os << "twist_rank," << report.twist_rank << "\n";
            os << "rank_c1," << report.rank_c1 << "\n";
            os << "rank_c2," << report.rank_c2 << "\n";
            os << "constraint_wrench_count," << report.constraint_wrenches.size() << "\n";
            for (std::size_t i = 0; i < report.constraint_wrenches.size(); ++i) {
                const Screw& w = report.constraint_wrenches[i];
                os << "wrench_" << i << ",";
                for (int c = 0; c < 6; ++c) {
                    os << (c ? " " : "") << format_real(w.coords()(c));
                }
                os << "\n";
            }
            os << "max_moment_residual," << format_real(report.max_moment_residual) << "\n";
            os << "so3_necessary," << (report.so3_necessary ? 1 : 0) << "\n";
            os << "redundant," << (report.redundant ? 1 : 0) << "\n";
            if (report.checklist) {
                os << "checklist_overall," << (report.checklist->overall ? 1 : 0) << "\n";
            }
            break;
        }
        case ReportFormat::JsonLines: {
            json j{{"classification", cls},
                   {"twist_rank", report.twist_rank},
                   {"rank_c1", report.rank_c1},
                   {"rank_c2", report.rank_c2},
                   {"so3_necessary", report.so3_necessary},
                   {"redundant", report.redundant},
                   {"max_moment_residual", format_real(report.max_moment_residual)}};
            json wrenches = json::array();
            for (const Screw& w : report.constraint_wrenches) wrenches.push_back(screw_json(w));
            j["constraint_wrenches"] = wrenches;
            json twists = json::array();
            for (const Screw& t : report.restriction_twists) twists.push_back(screw_json(t));
            j["restriction_twists"] = twists;
            if (report.checklist) {
                json items = json::array();
                for (const ConditionCheck& item : report.checklist->items) {
                    items.push_back(json{{"name", item.name},
                                         {"passed", item.passed},
                                         {"residual", format_real(item.value)}});
                }
                j["checklist"] = json{{"subcase", report.checklist->subcase},
                                      {"overall", report.checklist->overall},
                                      {"items", items}};
            }
            j["diagnostics"] = report.diagnostics;
            os << j.dump() << "\n";
            break;
        }
    }
    return os.str();
}

std::string render_verification(const std::vector<VerificationReport>& reports,
                                ReportFormat format) {
    std::ostringstream os;
    switch (format) {
        case ReportFormat::Human: {
            int passed = 0;
            for (const VerificationReport& r : reports) {
                os << (r.passed() ? "[pass] " : "[FAIL] ") << r.descriptor_id << "  trials "
                   << r.passes << "/" << r.trials << "  moment residual "
                   << format_real(r.max_moment_residual) << "  center residual "
                   << format_real(r.max_center_velocity);
                if (r.redundant) os << "  [redundant]";
                os << "\n";
                for (const std::string& note : r.notes) {
                    os << "       note: " << note << "\n";
                }
                if (r.passed()) ++passed;
            }
            os << passed << "/" << reports.size() << " descriptors verified (rng "
               << (reports.empty() ? kRngName : reports.front().rng_name) << ", seed "
               << (reports.empty() ? 0 : reports.front().seed) << ")\n";
            break;
        }
        case ReportFormat::Csv: {
            os << "id,trials,passes,max_moment_residual,max_center_velocity,redundant,checklist,"
                  "seed,rng\n";
            for (const VerificationReport& r : reports) {
                os << r.descriptor_id << ',' << r.trials << ',' << r.passes << ','
                   << format_real(r.max_moment_residual) << ','
                   << format_real(r.max_center_velocity) << ',' << (r.redundant ? 1 : 0) << ','
                   << (r.checklist_all ? 1 : 0) << ',' << r.seed << ',' << r.rng_name << "\n";
            }
            break;
        }
        case ReportFormat::JsonLines: {
            for (const VerificationReport& r : reports) {
                json j{{"id", r.descriptor_id},
                       {"trials", r.trials},
                       {"passes", r.passes},
                       {"max_moment_residual", format_real(r.max_moment_residual)},
                       {"max_center_velocity", format_real(r.max_center_velocity)},
                       {"redundant", r.redundant},
                       {"checklist", r.checklist_all},
                       {"seed", r.seed},
                       {"rng", r.rng_name},
                       {"notes", r.notes}};
                os << j.dump() << "\n";
            }
            break;
        }
    }
    return os.str();
}

std::string render_robot(const RobotModel& robot, const PlatformVerdict& verdict,
                         const JacobianBlocks& blocks, ReportFormat format) {
    const double g_av_norm = blocks.g_av.norm();
    const double g_cw_norm = blocks.g_cw.norm();
    const int g_cv_rank = detail::numeric_rank(blocks.g_cv);

    std::ostringstream os;
    switch (format) {
        case ReportFormat::Human: {
            os << "robot verdict: " << (verdict.so3 ? "SO(3)" : "NOT SO(3)") << "\n";
            os << "  limbs: " << robot.limbs.size() << ", actuated joints:";
            for (int a : robot.actuated) os << ' ' << a + 1;
            os << "\n";
            os << "  platform twist space dimension: " << verdict.platform_dimension << "\n";
            os << "  translation constraint rank: " << verdict.translation_constraint_rank
               << "\n";
            os << "  max center velocity residual: " << format_real(verdict.max_center_velocity)
               << "\n";
            os << "  max wrench moment residual: " << format_real(verdict.max_moment_residual)
               << "\n";
            os << "  per-limb necessary condition:";
            for (bool b : verdict.limb_so3_necessary) os << ' ' << bool_text(b);
            os << "\n";
            os << "  jacobian blocks: k=" << blocks.actuator_count()
               << " m=" << blocks.constraint_count() << "  |G_av|=" << format_real(g_av_norm)
               << "  |G_cw|=" << format_real(g_cw_norm) << "  rank(G_cv)=" << g_cv_rank << "\n";
            for (const std::string& d : verdict.diagnostics) {
                os << "  note: " << d << "\n";
            }
            break;
        }
        case ReportFormat::Csv: {
            os << "field,value\n";
            os << "so3," << (verdict.so3 ? 1 : 0) << "\n";
            os << "platform_dimension," << verdict.platform_dimension << "\n";
            os << "translation_constraint_rank," << verdict.translation_constraint_rank << "\n";
            os << "max_center_velocity," << format_real(verdict.max_center_velocity) << "\n";
            os << "max_moment_residual," << format_real(verdict.max_moment_residual) << "\n";
            os << "g_av_norm," << format_real(g_av_norm) << "\n";
            os << "g_cw_norm," << format_real(g_cw_norm) << "\n";
            os << "g_cv_rank," << g_cv_rank << "\n";
            break;
        }
        case ReportFormat::JsonLines: {
            json j{{"so3", verdict.so3},
                   {"platform_dimension", verdict.platform_dimension},
                   {"translation_constraint_rank", verdict.translation_constraint_rank},
                   {"max_center_velocity", format_real(verdict.max_center_velocity)},
                   {"max_moment_residual", format_real(verdict.max_moment_residual)},
                   {"limb_so3_necessary", verdict.limb_so3_necessary},
                   {"actuated", robot.actuated},
                   {"jacobian",
                    json{{"k", blocks.actuator_count()},
                         {"m", blocks.constraint_count()},
                         {"g_av_norm", format_real(g_av_norm)},
                         {"g_cw_norm", format_real(g_cw_norm)},
                         {"g_cv_rank", g_cv_rank}}},
                   {"diagnostics", verdict.diagnostics}};
            os << j.dump() << "\n";
            break;
        }
    }
    return os.str();
}

std::string render_props(const PropositionReport& report, ReportFormat format) {
    std::ostringstream os;
    switch (format) {
        case ReportFormat::Human: {
            os << "geometric proposition suite (" << report.trials << " trials, seed "
               << report.seed << ")\n";
            for (int i = 0; i < PropositionReport::kCount; ++i) {
                os << "  " << i + 1 << ". " << PropositionReport::names()[i] << ": max residual "
                   << format_real(report.max_residual[i]) << "\n";
            }
            os << "all within 1e-10: " << bool_text(report.all_within(1e-10)) << "\n";
            break;
        }
        case ReportFormat::Csv: {
            os << "proposition,max_residual\n";
            for (int i = 0; i < PropositionReport::kCount; ++i) {
                os << PropositionReport::names()[i] << ',' << format_real(report.max_residual[i])
                   << "\n";
            }
            break;
        }
        case ReportFormat::JsonLines: {
            for (int i = 0; i < PropositionReport::kCount; ++i) {
                json j{{"proposition", PropositionReport::names()[i]},
                       {"max_residual", format_real(report.max_residual[i])},
                       {"trials", report.trials},
                       {"seed", report.seed}};
                os << j.dump() << "\n";
            }
            break;
        }
    }
    return os.str();
}

std::string render_counts(const CatalogCounts& counts, ReportFormat format) {
    std::ostringstream os;
    switch (format) {
        case ReportFormat::Human: {
            os << "limb types: " << counts.total_limbs << "\n";
            if (!counts.per_category.empty()) {
                os << "per category:";
                for (const auto& [family, n] : catalog_category_counts()) {
                    os << ' ' << system_label(family) << '=' << n;
                }
                os << "\n";
            }
            os << counts.symmetric << " symmetric / " << counts.asymmetric << " asymmetric / "
               << counts.total_robots << " total\n";
            break;
        }
        case ReportFormat::Csv: {
            os << "limb_types,symmetric,asymmetric,total\n";
            os << counts.total_limbs << ',' << counts.symmetric << ',' << counts.asymmetric << ','
               << counts.total_robots << "\n";
            break;
        }
        case ReportFormat::JsonLines: {
            json j{{"limb_types", counts.total_limbs},
                   {"symmetric", counts.symmetric},
                   {"asymmetric", counts.asymmetric},
                   {"total", counts.total_robots}};
            if (!counts.per_category.empty()) {
                json cats;
                for (const auto& [family, n] : counts.per_category) {
                    cats[system_code(family)] = n;
                }
                j["per_category"] = cats;
            }
            os << j.dump() << "\n";
            break;
        }
    }
    return os.str();
}

} // namespace so3limb
