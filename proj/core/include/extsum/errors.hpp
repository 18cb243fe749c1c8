#pragma once

#include <stdexcept>
#include <string>

namespace extsum {

// Base class for all library errors so callers can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

// Point lies outside the effective domain of the function.
class DomainError : public Error {
public:
    using Error::Error;
};

// Exact subdifferential is empty at the queried point (eps = 0 request).
class EmptySubdifferentialError : public Error {
public:
    using Error::Error;
};

class UnsupportedResolventError : public Error {
public:
    using Error::Error;
};

// Requested a closed-form selection or membership test that is not
// implemented for this oracle kind / dimension.
class UnsupportedOracleError : public Error {
public:
    using Error::Error;
};

// Specialized runner invoked on a problem outside its specialization.
class SpecializationMismatchError : public Error {
public:
    using Error::Error;
};

// Baseline algorithm cannot run on this problem (e.g. needs exact
// subgradients everywhere along its own trajectory).
class BaselineInapplicableError : public Error {
public:
    using Error::Error;
};

// Step schedule fails the convergence relations and no override was given.
class ScheduleInvalidError : public Error {
public:
    using Error::Error;
};

// Malformed or unreadable trace file.
class TraceFormatError : public Error {
public:
    using Error::Error;
};

// Trace was recorded with thinning and the check needs every iterate.
class InsufficientResolutionError : public Error {
public:
    using Error::Error;
};

} // namespace extsum
