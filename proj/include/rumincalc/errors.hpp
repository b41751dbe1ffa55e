#pragma once

#include <stdexcept>
#include <string>

namespace rumincalc {

// Base of every library failure. The CLI maps subclasses to exit codes:
// input-syntax errors (ParseError, FormParseError, UsageError) become exit 2,
// everything else derived from RuminError becomes exit 1.
struct RuminError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structure-constant document is syntactically malformed. line is 1-based.
struct ParseError : RuminError {
    int line;
    ParseError(int line_, const std::string& what_)
        : RuminError("parse error at line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Form mini-language expression is malformed. pos is a 0-based byte offset.
struct FormParseError : RuminError {
    int pos;
    FormParseError(int pos_, const std::string& what_)
        : RuminError("form parse error at position " + std::to_string(pos_) + ": " + what_), pos(pos_) {}
};

struct UsageError : RuminError {
    using RuminError::RuminError;
};

struct JacobiViolation : RuminError {
    int i, j, k;
    JacobiViolation(int i_, int j_, int k_)
        : RuminError("Jacobi identity fails on basis triple (" + std::to_string(i_) + "," +
                     std::to_string(j_) + "," + std::to_string(k_) + ")"),
          i(i_), j(j_), k(k_) {}
};

struct GradingViolation : RuminError {
    int i, j, k;
    GradingViolation(int i_, int j_, int k_)
        : RuminError("bracket [" + std::to_string(i_) + "," + std::to_string(j_) + "] -> " +
                     std::to_string(k_) + " violates the layer grading"),
          i(i_), j(j_), k(k_) {}
};

struct GenerationViolation : RuminError {
    int layer;
    explicit GenerationViolation(int layer_)
        : RuminError("layer " + std::to_string(layer_) +
                     " is not spanned by brackets of the first layer with layer " +
                     std::to_string(layer_ - 1)),
          layer(layer_) {}
};

struct NonpositiveLambda : RuminError {
    NonpositiveLambda() : RuminError("dilation factor must be positive") {}
};

struct DegreeOverflow : RuminError {
    using RuminError::RuminError;
};

struct NotHeisenberg : RuminError {
    NotHeisenberg()
        : RuminError("operation requires a Heisenberg-type group (two layers, one-dimensional "
                     "center, nondegenerate bracket form)") {}
};

struct NoConvergence : RuminError {
    using RuminError::RuminError;
};

struct NotRumin : RuminError {
    NotRumin() : RuminError("form is not fixed by the Rumin projector pi_E0") {}
};

struct BoundTooSmall : RuminError {
    using RuminError::RuminError;
};

struct NotClosed : RuminError {
    NotClosed() : RuminError("form is not d_c-closed") {}
};

struct OrderTooHigh : RuminError {
    using RuminError::RuminError;
};

struct DegenerateShell : RuminError {
    DegenerateShell() : RuminError("shell radii must satisfy 0 < R1 < R2") {}
};

struct MixedWeight : RuminError {
    MixedWeight() : RuminError("form must have pure weight") {}
};

struct DegreeMismatch : RuminError {
    using RuminError::RuminError;
};

}  // namespace rumincalc
