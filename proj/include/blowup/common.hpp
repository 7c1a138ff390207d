/// @file common.hpp
/// Shared error types and small formatting helpers.

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace blowup {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation outside a function's domain, or a mathematically undefined
/// operation (ln of non-positive, division by zero, 0^negative, ...).
class DomainError : public Error {
public:
    DomainError(const std::string& what, double at)
        : Error(what), at_(at) {}
    double at() const { return at_; }

private:
    double at_;
};

/// A function declared positive evaluated to a non-positive value.
class PositivityError : public DomainError {
public:
    PositivityError(const std::string& what, double at, double value)
        : DomainError(what, at), value_(value) {}
    double value() const { return value_; }

private:
    double value_;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// A solver failed to converge; carries a human-readable residual report.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Formats a double with 17 significant digits, '.' separator.
/// All CSV/JSON numeric output goes through this, so reruns are
/// byte-identical.
inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace blowup
