#pragma once

#include <stdexcept>

namespace cmlecon {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid numeric input: non-finite state, argument outside its domain.
struct DomainError : Error {
    using Error::Error;
};

/// Operation undefined at a = 1, where the |1-a| scaling vanishes.
struct SingularParameterError : Error {
    using Error::Error;
};

/// No positive fixed point exists (r <= 1).
struct NoFixedPointError : Error {
    using Error::Error;
};

/// Too few samples above the requested threshold to fit.
struct InsufficientDataError : Error {
    using Error::Error;
};

/// Fit undefined on this data (zero-variance tail, every sample at xmin).
struct DegenerateFitError : Error {
    using Error::Error;
};

/// Gini coefficient undefined: sample mean is zero.
struct UndefinedGiniError : Error {
    using Error::Error;
};

/// Inconsistent configuration (exchange rule, protocol, CLI flags).
struct ConfigError : Error {
    using Error::Error;
};

} // namespace cmlecon
