#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace specvar {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed measure or input file.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numerical routine could not meet its tolerance.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double achieved = std::numeric_limits<double>::quiet_NaN())
        : Error(what), achieved_(achieved) {}

    /// Error estimate actually reached (NaN when not applicable).
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace specvar
