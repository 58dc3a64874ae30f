#pragma once

#include <stdexcept>
#include <string>

namespace bergdecomp {

// Error taxonomy mirrors the CLI exit codes:
//   ArgumentError   -> 2 (malformed input / parse failure)
//   ResourceCapError-> 3 (group order cap, truncation degree cap, refinement cap)
//   EvalDomainError -> 4 (point outside domain or outside series validity region)
//   NumericError    -> 1 (residual / convergence failure surfaced as check failure)

struct ArgumentError : std::runtime_error {
    explicit ArgumentError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceCapError : std::runtime_error {
    explicit ResourceCapError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EvalDomainError : std::runtime_error {
    explicit EvalDomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace bergdecomp
