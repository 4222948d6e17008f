#pragma once

#include <stdexcept>
#include <string>

namespace charsense {

/// Parameters, polynomials, or file contents violate a documented precondition.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested field or matrix would exceed the configured size cap.
struct SizeError : ValidationError {
    using ValidationError::ValidationError;
};

/// An index or length is outside its admissible range.
struct RangeError : ValidationError {
    using ValidationError::ValidationError;
};

/// An iterative solver exhausted its sweep budget without converging.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A verified property failed to hold on computed data.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace charsense
