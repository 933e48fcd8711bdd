#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edgetest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameter or index supplied by the caller.
class ConfigError : public Error {
public:
    using Error::Error;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

/// Too few samples for the requested estimator.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A moment was looked up that the store was not built to hold.
class MissingMomentError : public Error {
public:
    using Error::Error;
};

/// Smallest eigenvalue of the covariance estimate fell at or below the
/// relative singularity floor.
class SingularCovarianceError : public Error {
public:
    SingularCovarianceError(const std::string& what, double smallest_eigenvalue)
        : Error(what), smallest_eigenvalue_(smallest_eigenvalue) {}

    [[nodiscard]] double smallest_eigenvalue() const noexcept { return smallest_eigenvalue_; }

private:
    double smallest_eigenvalue_;
};

class DegeneratePrecisionError : public Error {
public:
    using Error::Error;
};

class InvalidSupportError : public Error {
public:
    using Error::Error;
};

class NotSpdError : public Error {
public:
    using Error::Error;
};

class GenerationFailure : public Error {
public:
    using Error::Error;
};

/// Malformed input file. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace edgetest
