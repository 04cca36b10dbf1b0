#pragma once

#include <stdexcept>
#include <string>

namespace lspec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid simulation or model configuration (bad dimensions, bad ratio, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// Operand shapes do not line up (lag too large for the panel, ...).
struct DimensionError : Error {
    using Error::Error;
};

/// Truncation point lies below the support infimum, leaving zero variance.
struct DegenerateTruncationError : Error {
    using Error::Error;
};

struct EmptyInputError : Error {
    using Error::Error;
};

struct IntervalError : Error {
    using Error::Error;
};

/// Eigensolver did not converge; carries the sweep count at failure.
struct SolverFailure : Error {
    SolverFailure(const std::string& msg, int iters) : Error(msg), iterations(iters) {}
    int iterations;
};

/// Stieltjes transform requested outside the open upper half-plane.
struct HalfPlaneError : Error {
    using Error::Error;
};

/// Branch selection found zero or multiple admissible roots.
struct BranchAmbiguityError : Error {
    BranchAmbiguityError(const std::string& msg, int count) : Error(msg), admissible_count(count) {}
    int admissible_count;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace lspec
