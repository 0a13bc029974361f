#pragma once

#include <stdexcept>
#include <string>

namespace reachkit {

// Malformed input: unreadable grid file, bad JSON, unknown shape kind.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid input that violates a mathematical precondition,
// e.g. spindle endpoints at distance 0 or >= 2R, nonpositive radius.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Grid window too small to answer the query reliably (erosion or
// certification would read cells outside the sampled region).
struct WindowError : std::runtime_error {
    explicit WindowError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace reachkit
