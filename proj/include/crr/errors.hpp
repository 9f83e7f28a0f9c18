#pragma once

#include <stdexcept>
#include <string>

namespace crr {

// Thrown when a computation would exceed a configured size cap.
// The CLI maps it to exit code 3.
struct resource_limit_error : std::runtime_error {
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid job configuration (syntax aside, which surfaces as a JSON parse
// error).  `where` is a JSON-pointer-style path into the offending document.
// The CLI maps it to exit code 2.
struct config_error : std::runtime_error {
    std::string where;
    config_error(std::string where_, const std::string& what)
        : std::runtime_error(where_.empty() ? what : where_ + ": " + what),
          where(std::move(where_)) {}
};

// A structural property the library guarantees was observed to fail.
// The CLI maps it to exit code 4.
struct invariant_violation : std::logic_error {
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace crr
