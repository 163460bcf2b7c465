// Command-line front end. Talks to the core library exclusively through the
// C API in so3limb/so3limb.h.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "so3limb/so3limb.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { so3_string_free(ptr); }
};

int to_format(const std::string& name, so3_format& out) {
    if (name == "human") out = SO3_FORMAT_HUMAN;
    else if (name == "csv") out = SO3_FORMAT_CSV;
    else if (name == "jsonl") out = SO3_FORMAT_JSONL;
    else return -1;
    return 0;
}

int fail(so3_status status) {
    std::fprintf(stderr, "error: %s\n", so3_last_error());
    // Parse and usage problems are usage errors; everything else is a
    // verification/analysis failure.
    return (status == SO3_ERR_PARSE || status == SO3_ERR_ARGUMENT ||
            status == SO3_ERR_UNKNOWN_DESCRIPTOR)
               ? kExitUsage
               : kExitVerificationFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"screw-theory constraint analysis for SO(3) parallel robot limbs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(so3_version()));

    std::string format_name = "human";
    std::string category;
    std::string limb_path;
    std::string checklist_id;
    std::string verify_id;
    bool verify_all = false;
    std::vector<std::string> robot_ids;
    int trials = 10;
    std::uint64_t seed = 0;
    int limb_types = 73;
    int props_trials = 1000;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_name, "output format: human, csv, jsonl")
            ->default_val("human");
    };

    CLI::App* cmd_catalog = app.add_subcommand("catalog", "print the limb-variant catalog");
    add_format(cmd_catalog);
    cmd_catalog->add_option("--category", category, "restrict to one system family, e.g. 5s0");

    CLI::App* cmd_analyze = app.add_subcommand("analyze", "constraint report for a limb spec file");
    add_format(cmd_analyze);
    cmd_analyze->add_option("limbspec", limb_path, "limb spec file")->required();
    cmd_analyze->add_option("--checklist", checklist_id, "catalog descriptor id for the case conditions");

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the verification harness");
    add_format(cmd_verify);
    cmd_verify->add_option("descriptor", verify_id, "catalog descriptor id");
    cmd_verify->add_flag("--all", verify_all, "verify every catalog descriptor");
    cmd_verify->add_option("--trials", trials, "trials per descriptor")->default_val(10);
    cmd_verify->add_option("--seed", seed, "base seed")->default_val(0);

    CLI::App* cmd_robot = app.add_subcommand("robot", "build and verify a three-limb robot");
    add_format(cmd_robot);
    cmd_robot->add_option("descriptors", robot_ids, "three catalog descriptor ids")
        ->expected(3)
        ->required();
    cmd_robot->add_option("--seed", seed, "base seed")->default_val(0);

    CLI::App* cmd_counts = app.add_subcommand("counts", "robot counts for a limb-type pool");
    add_format(cmd_counts);
    cmd_counts->add_option("--limbs", limb_types, "number of limb types")->default_val(73);

    CLI::App* cmd_props = app.add_subcommand("props", "geometric proposition suite");
    add_format(cmd_props);
    cmd_props->add_option("--trials", props_trials, "trials per proposition")->default_val(1000);
    cmd_props->add_option("--seed", seed, "base seed")->default_val(0);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    so3_format format = SO3_FORMAT_HUMAN;
    if (to_format(format_name, format) != 0) {
        std::fprintf(stderr, "error: unknown format '%s'\n", format_name.c_str());
        return kExitUsage;
    }

    if (cmd_catalog->parsed()) {
        OwnedString text;
        const so3_status status =
            so3_catalog_render(format, category.empty() ? nullptr : category.c_str(), &text.ptr);
        if (status != SO3_OK) return fail(status);
        std::fputs(text.ptr, stdout);
        return kExitOk;
    }

    if (cmd_analyze->parsed()) {
        so3_limb* limb = nullptr;
        so3_status status = so3_limb_parse_file(limb_path.c_str(), &limb);
        if (status != SO3_OK) return fail(status);
        OwnedString text;
        status = so3_analyze_render(limb, checklist_id.empty() ? nullptr : checklist_id.c_str(),
                                    format, &text.ptr);
        so3_limb_free(limb);
        if (status != SO3_OK) return fail(status);
        std::fputs(text.ptr, stdout);
        return kExitOk;
    }

    if (cmd_verify->parsed()) {
        if (verify_all ? !verify_id.empty() : verify_id.empty()) {
            std::fprintf(stderr, "error: give exactly one of a descriptor id or --all\n");
            return kExitUsage;
        }
        OwnedString text;
        int all_pass = 0;
        const so3_status status =
            so3_verify_render(verify_all ? nullptr : verify_id.c_str(), trials, seed, format,
                              &text.ptr, &all_pass);
        if (status != SO3_OK) return fail(status);
        std::fputs(text.ptr, stdout);
        return all_pass ? kExitOk : kExitVerificationFailure;
    }

    if (cmd_robot->parsed()) {
        OwnedString text;
        int ok = 0;
        const so3_status status =
            so3_robot_render(robot_ids[0].c_str(), robot_ids[1].c_str(), robot_ids[2].c_str(),
                             seed, format, &text.ptr, &ok);
        if (status != SO3_OK) return fail(status);
        std::fputs(text.ptr, stdout);
        return ok ? kExitOk : kExitVerificationFailure;
    }

    if (cmd_counts->parsed()) {
        long long symmetric = 0, asymmetric = 0, total = 0;
        so3_status status = so3_counts(limb_types, &symmetric, &asymmetric, &total);
        if (status != SO3_OK) return fail(status);
        if (format == SO3_FORMAT_HUMAN) {
            std::printf("%lld symmetric / %lld asymmetric / %lld total\n", symmetric, asymmetric,
                        total);
        } else if (format == SO3_FORMAT_CSV) {
            std::printf("limb_types,symmetric,asymmetric,total\n%d,%lld,%lld,%lld\n", limb_types,
                        symmetric, asymmetric, total);
        } else {
            std::printf("{\"asymmetric\":%lld,\"limb_types\":%d,\"symmetric\":%lld,\"total\":%lld}\n",
                        asymmetric, limb_types, symmetric, total);
        }
        return kExitOk;
    }

    if (cmd_props->parsed()) {
        OwnedString text;
        int ok = 0;
        const so3_status status = so3_props_render(props_trials, seed, format, &text.ptr, &ok);
        if (status != SO3_OK) return fail(status);
        std::fputs(text.ptr, stdout);
        return ok ? kExitOk : kExitVerificationFailure;
    }

    return kExitUsage;
}
