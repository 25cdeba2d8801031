#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sympow {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text. `pos` is a 0-based offset into the source string.
struct parse_error : error {
    std::size_t pos;
    parse_error(const std::string& what, std::size_t pos_)
        : error(what + " (at position " + std::to_string(pos_) + ")"), pos(pos_) {}
};

// Structurally invalid arguments: mixed rings, non-prime modulus, bad exponents.
struct invalid_argument_error : error {
    using error::error;
};

// Exponent arithmetic left the supported range (exponents must stay below 2^31).
struct overflow_error : error {
    using error::error;
};

// A computation hit one of the configured caps instead of finishing.
struct resource_limit_error : error {
    std::string which;  // "max_degree" | "max_steps" | "max_pairs"
    resource_limit_error(const std::string& what, std::string which_)
        : error(what), which(std::move(which_)) {}
};

// The request falls outside what the implementation supports
// (unsupported ideal class, characteristic guard violations, degenerate matrices).
struct unsupported_error : error {
    using error::error;
};

}  // namespace sympow
