#pragma once

#include <stdexcept>
#include <string>

namespace reifflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precondition or argument violation.
struct DomainError : Error {
    using Error::Error;
};

/// A set clipped to a ball came out empty; the caller must treat the
/// quantity as undefined, not as zero.
struct EmptyIntersection : DomainError {
    using DomainError::DomainError;
};

/// Grid too coarse to resolve the requested scale.
struct ResolutionError : DomainError {
    using DomainError::DomainError;
};

struct ResourceError : Error {
    using Error::Error;
};

/// Produced geometry violates a topological requirement (e.g. self-intersection).
struct TopologyError : Error {
    using Error::Error;
};

/// A normal ray failed to meet the other curve exactly once.
struct NotAGraphError : Error {
    using Error::Error;
};

/// Non-finite values appeared during time stepping.
struct BlowupError : Error {
    using Error::Error;
};

/// The zero set vanished; the flow is over.
struct ExtinctError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace reifflow
