#include "so3limb/so3limb.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "so3limb/constraint.hpp"
#include "so3limb/enumeration.hpp"
#include "so3limb/render.hpp"
#include "so3limb/spec_format.hpp"

#if defined(__GNUC__)
#define SO3_EXPORT __attribute__((visibility("default")))
#else
#define SO3_EXPORT
#endif

namespace {

thread_local std::string g_last_error;

so3_status status_of(const so3limb::Error& e) {
    using so3limb::Errc;
    switch (e.code()) {
        case Errc::parse_error:
            return SO3_ERR_PARSE;
        case Errc::zero_direction:
        case Errc::too_few_joints:
        case Errc::too_many_joints:
        case Errc::validation_error:
        case Errc::kind_mismatch:
        case Errc::degenerate_screw:
        case Errc::system_mismatch:
        case Errc::not_five_system:
            return SO3_ERR_VALIDATION;
        case Errc::index_out_of_range:
        case Errc::invalid_argument:
            return SO3_ERR_ARGUMENT;
        case Errc::all_parallel:
        case Errc::no_unique_actuation_wrench:
        case Errc::singular_actuation_block:
        case Errc::singular_schur_complement:
        case Errc::singular_limb:
        case Errc::exhausted_resampling:
            return SO3_ERR_SINGULAR;
        case Errc::unknown_descriptor:
            return SO3_ERR_UNKNOWN_DESCRIPTOR;
    }
    return SO3_ERR_INTERNAL;
}

template <typename Fn>
so3_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const so3limb::Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SO3_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SO3_ERR_INTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

so3_status bad_argument(const char* what) {
    g_last_error = what;
    return SO3_ERR_ARGUMENT;
}

std::optional<so3limb::ReportFormat> to_format(so3_format format) {
    switch (format) {
        case SO3_FORMAT_HUMAN: return so3limb::ReportFormat::Human;
        case SO3_FORMAT_CSV: return so3limb::ReportFormat::Csv;
        case SO3_FORMAT_JSONL: return so3limb::ReportFormat::JsonLines;
    }
    return std::nullopt;
}

} // namespace

struct so3_limb {
    so3limb::LimbModel model;
    std::optional<std::string> descriptor_id;
    std::vector<std::string> warnings;
};

extern "C" {

SO3_EXPORT const char* so3_version(void) { return "0.1.0"; }

SO3_EXPORT const char* so3_last_error(void) { return g_last_error.c_str(); }

SO3_EXPORT void so3_string_free(char* s) { std::free(s); }

SO3_EXPORT so3_status so3_limb_parse_text(const char* text, so3_limb** out) {
    if (!text || !out) return bad_argument("null argument");
    return guarded([&] {
        const so3limb::ParsedLimbSpec parsed = so3limb::parse_limb_spec(text);
        auto handle = std::make_unique<so3_limb>();
        handle->model = so3limb::build_limb(parsed.spec);
        handle->descriptor_id = parsed.descriptor_id;
        handle->warnings = parsed.warnings;
        *out = handle.release();
        return SO3_OK;
    });
}

SO3_EXPORT so3_status so3_limb_parse_file(const char* path, so3_limb** out) {
    if (!path || !out) return bad_argument("null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        g_last_error = std::string("cannot open '") + path + "'";
        return SO3_ERR_ARGUMENT;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return so3_limb_parse_text(text.str().c_str(), out);
}

SO3_EXPORT void so3_limb_free(so3_limb* limb) { delete limb; }

SO3_EXPORT so3_status so3_limb_joint_count(const so3_limb* limb, int* out) {
    if (!limb || !out) return bad_argument("null argument");
    *out = static_cast<int>(limb->model.joint_count());
    return SO3_OK;
}

SO3_EXPORT so3_status so3_limb_signature(const so3_limb* limb, int* zero_pitch,
                                         int* infinite_pitch) {
    if (!limb || !zero_pitch || !infinite_pitch) return bad_argument("null argument");
    *zero_pitch = limb->model.zero_pitch_count;
    *infinite_pitch = limb->model.infinite_pitch_count;
    return SO3_OK;
}

SO3_EXPORT so3_status so3_limb_constraint_count(const so3_limb* limb, int* out) {
    if (!limb || !out) return bad_argument("null argument");
    return guarded([&] {
        *out = static_cast<int>(so3limb::constraint_wrench_space(limb->model).size());
        return SO3_OK;
    });
}

SO3_EXPORT so3_status so3_limb_constraint_wrench(const so3_limb* limb, int index,
                                                 double coords[6]) {
    if (!limb || !coords) return bad_argument("null argument");
    return guarded([&] {
        const std::vector<so3limb::Screw> wrenches =
            so3limb::constraint_wrench_space(limb->model);
        if (index < 0 || index >= static_cast<int>(wrenches.size())) {
            so3limb::throw_error(so3limb::Errc::index_out_of_range,
                                 "wrench index " + std::to_string(index));
        }
        const so3limb::Vec6 c = wrenches[index].coords();
        for (int i = 0; i < 6; ++i) coords[i] = c(i);
        return SO3_OK;
    });
}

SO3_EXPORT so3_status so3_limb_so3_necessary(const so3_limb* limb, int* out) {
    if (!limb || !out) return bad_argument("null argument");
    return guarded([&] {
        *out = so3limb::check_so3_necessary(limb->model) ? 1 : 0;
        return SO3_OK;
    });
}

SO3_EXPORT so3_status so3_catalog_render(so3_format format, const char* category, char** out) {
    if (!out) return bad_argument("null argument");
    const auto fmt = to_format(format);
    if (!fmt) return bad_argument("unknown format");
    return guarded([&] {
        std::optional<so3limb::SystemFamily> family;
        if (category) {
            family = so3limb::parse_category(category);
            if (!family) {
                so3limb::throw_error(so3limb::Errc::invalid_argument,
                                     std::string("unknown category '") + category + "'");
            }
        }
        *out = copy_string(so3limb::render_catalog(*fmt, family));
        return SO3_OK;
    });
}

SO3_EXPORT so3_status so3_catalog_size(int* out) {
    if (!out) return bad_argument("null argument");
    *out = static_cast<int>(so3limb::catalog().size());
    return SO3_OK;
}

SO3_EXPORT so3_status so3_counts(int limb_types, long long* symmetric, long long* asymmetric,
                                 long long* total) {
    if (!symmetric || !asymmetric || !total) return bad_argument("null argument");
    return guarded([&] {
        const so3limb::CatalogCounts counts = so3limb::count_robots(limb_types);
        *symmetric = counts.symmetric;
        *asymmetric = counts.asymmetric;
        *total = counts.total_robots;
        return SO3_OK;
    });
}

SO3_EXPORT so3_status so3_analyze_render(const so3_limb* limb, const char* checklist_id,
                                         so3_format format, char** out) {
    if (!limb || !out) return bad_argument("null argument");
    const auto fmt = to_format(format);
    if (!fmt) return bad_argument("unknown format");
    return guarded([&] {
        std::optional<so3limb::VariantDescriptor> descriptor;
        if (checklist_id) {
            descriptor = so3limb::catalog_lookup(checklist_id);
        } else if (limb->descriptor_id) {
            descriptor = so3limb::catalog_lookup(*limb->descriptor_id);
        }
        const so3limb::ConstraintReport report =
            so3limb::analyze_limb(limb->model, descriptor ? &*descriptor : nullptr);
        std::string text = so3limb::render_constraint_report(report, *fmt);
        if (*fmt == so3limb::ReportFormat::Human) {
            for (const std::string& w : limb->warnings) {
                text += "  warning: " + w + "\n";
            }
        }
        *out = copy_string(text);
        return SO3_OK;
    });
}

SO3_EXPORT so3_status so3_verify_render(const char* descriptor_id, int trials, uint64_t seed,
                                        so3_format format, char** out, int* all_pass) {
    if (!out || !all_pass) return bad_argument("null argument");
    const auto fmt = to_format(format);
    if (!fmt) return bad_argument("unknown format");
    return guarded([&] {
        std::vector<so3limb::VerificationReport> reports;
        if (descriptor_id) {
            reports.push_back(
                so3limb::verify_variant(so3limb::catalog_lookup(descriptor_id), trials, seed));
        } else {
            for (const so3limb::VariantDescriptor& d : so3limb::catalog()) {
                reports.push_back(so3limb::verify_variant(d, trials, seed));
            }
        }
        bool ok = true;
        for (const so3limb::VerificationReport& r : reports) {
            ok &= r.passed();
        }
        *all_pass = ok ? 1 : 0;
        *out = copy_string(so3limb::render_verification(reports, *fmt));
        return SO3_OK;
    });
}

SO3_EXPORT so3_status so3_robot_render(const char* id1, const char* id2, const char* id3,
                                       uint64_t seed, so3_format format, char** out, int* ok) {
    if (!id1 || !id2 || !id3 || !out || !ok) return bad_argument("null argument");
    const auto fmt = to_format(format);
    if (!fmt) return bad_argument("unknown format");
    return guarded([&] {
        const std::array<so3limb::VariantDescriptor, 3> descriptors = {
            so3limb::catalog_lookup(id1), so3limb::catalog_lookup(id2),
            so3limb::catalog_lookup(id3)};
        const so3limb::RobotModel robot = so3limb::build_robot(descriptors, seed);
        const so3limb::PlatformVerdict verdict = so3limb::verify_so3_platform(robot);
        const so3limb::JacobianBlocks blocks = so3limb::assemble_extended_jacobian(robot);
        *ok = verdict.so3 ? 1 : 0;
        *out = copy_string(so3limb::render_robot(robot, verdict, blocks, *fmt));
        return SO3_OK;
    });
}

SO3_EXPORT so3_status so3_props_render(int trials, uint64_t seed, so3_format format, char** out,
                                       int* ok) {
    if (!out || !ok) return bad_argument("null argument");
    const auto fmt = to_format(format);
    if (!fmt) return bad_argument("unknown format");
    return guarded([&] {
        const so3limb::PropositionReport report =
            so3limb::check_geometric_propositions(seed, trials);
        *ok = report.all_within(1e-10) ? 1 : 0;
        *out = copy_string(so3limb::render_props(report, *fmt));
        return SO3_OK;
    });
}

} // extern "C"
