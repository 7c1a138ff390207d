/// @file scalar_fn.hpp
/// ScalarFn: a positive scalar function of one real variable, backed by a
/// parsed expression, a sample table with piecewise-linear interpolation,
/// or an arbitrary callable (built-in parametric families).

#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "blowup/expr.hpp"

namespace blowup {

class ScalarFn {
public:
    ScalarFn() = default;

    static ScalarFn from_expression(Expression e,
                                    double lo = 0.0,
                                    double hi = std::numeric_limits<double>::infinity(),
                                    bool positive = false);

    /// Convenience: parse text over `variable` and wrap.
    static ScalarFn from_text(std::string_view text, std::string_view variable,
                              double lo = 0.0,
                              double hi = std::numeric_limits<double>::infinity(),
                              bool positive = false);

    /// Sample table with monotone piecewise-linear interpolation.
    /// x must be strictly increasing; the domain is (x.front(), x.back()).
    static ScalarFn from_samples(std::vector<double> x, std::vector<double> y,
                                 bool positive = false);

    static ScalarFn from_callable(std::function<double(double)> f,
                                  std::string description,
                                  double lo = 0.0,
                                  double hi = std::numeric_limits<double>::infinity(),
                                  bool positive = false);

    /// Evaluates at x.  Throws DomainError outside (lo, hi) or on a
    /// non-finite result; throws PositivityError if the positivity flag is
    /// set and the value is <= 0.
    double operator()(double x) const;

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool positive_flag() const { return positive_; }
    const std::string& description() const { return desc_; }
    bool valid() const { return static_cast<bool>(fn_); }

    /// Value with the boundary convention used by mollification: 0 below
    /// the domain, clamped to the upper endpoint above it.
    double extended(double x) const;

private:
    std::function<double(double)> fn_;
    double lo_ = 0.0;
    double hi_ = std::numeric_limits<double>::infinity();
    bool positive_ = false;
    std::string desc_;
};

} // namespace blowup
