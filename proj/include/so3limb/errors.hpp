#pragma once

#include <stdexcept>
#include <string>

namespace so3limb {

enum class Errc {
    zero_direction,
    kind_mismatch,
    degenerate_screw,
    too_few_joints,
    too_many_joints,
    all_parallel,
    not_five_system,
    system_mismatch,
    index_out_of_range,
    no_unique_actuation_wrench,
    singular_actuation_block,
    singular_schur_complement,
    singular_limb,
    exhausted_resampling,
    parse_error,
    validation_error,
    unknown_descriptor,
    invalid_argument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

/// Parse failure with a source position. Lines and columns are 1-based.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error(Errc::parse_error,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

[[noreturn]] inline void throw_error(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace so3limb
