#pragma once

#include <stdexcept>
#include <string>

namespace quadrisect {

/// Input violates a documented precondition (coincident points, bad indices, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Configuration is too close to degenerate for the numeric method to give a
/// trustworthy answer (rank-deficient quadric system, coincident plane
/// piercings, ...).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A rejection-sampling budget was exhausted without producing a valid value.
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document (JSON parse failure, unknown format version, ...).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace quadrisect
