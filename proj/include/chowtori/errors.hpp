#pragma once

#include <stdexcept>
#include <string>

namespace chowtori {

// Error categories map 1:1 onto CLI exit codes (see tools/).
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file or flag syntax.
struct parse_error : error {
    using error::error;
};

// Structurally well-formed input that violates a precondition
// (non-stable lattice, torsion quotient, bad dimensions, ...).
struct validation_error : error {
    using error::error;
};

// A configured bound was exceeded (group order, degree cap).
struct resource_error : error {
    explicit resource_error(const std::string& msg, long bound_)
        : error(msg), bound(bound_) {}
    long bound;
};

// An internal invariant or cross-check failed. Never swallowed.
struct invariant_error : error {
    using error::error;
};

} // namespace chowtori
