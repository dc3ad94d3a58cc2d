#pragma once

#include <stdexcept>
#include <string>

namespace tanglekit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverflowError : Error { using Error::Error; };
struct NonCoherentPhases : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct EmptyDiagram : Error { using Error::Error; };
struct ResultNotInPhi : Error { using Error::Error; };
struct PhaseIncoherence : Error { using Error::Error; };
struct PatternMismatch : Error { using Error::Error; };
struct CrossingCapExceeded : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct MatchingError : Error { using Error::Error; };

/// Syntax error in the expression language, with 1-based position.
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int l, int c)
        : Error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

}  // namespace tanglekit
