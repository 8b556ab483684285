#pragma once

#include <stdexcept>
#include <string>

namespace irsub {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed arguments that violate a precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Exact enumeration refused because the instance is above the size cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Randomized construction gave up after its retry budget.
class RetryLimitExceeded : public Error {
public:
    using Error::Error;
};

/// Numerical integration did not reach the requested tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}
    double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace irsub
