#pragma once

#include <stdexcept>
#include <string>

namespace zarlab {

/// Library error with a stable machine-readable code, used by the CLI
/// to map failures onto exit codes and reports.
struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

inline Error err(const std::string& code, const std::string& msg) { return Error(code, msg); }

}  // namespace zarlab
