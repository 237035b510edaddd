#pragma once

#include <stdexcept>
#include <string>

namespace dimenfix {

/// Base class for every error the library reports. Callers that only care
/// about "something went wrong while running" catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input (CSV cells, grid files, projection files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Arguments that violate an operation's preconditions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Numerical failure: solver non-convergence, non-finite coordinates.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace dimenfix
