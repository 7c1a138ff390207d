/// @file quadrature.hpp
/// Adaptive and composite quadrature used throughout the library.

#pragma once

#include <functional>

namespace blowup {

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance.
/// Throws QuadratureError if the refinement depth limit is reached before
/// the local error estimates fall under the tolerance budget.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 48);

/// Composite Simpson with a fixed number of panels (panels >= 1).
double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int panels);

} // namespace blowup
