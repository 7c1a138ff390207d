/// @file radial.hpp
/// Radial calculus: profiles phi(r) with derivatives, the radial form of the
/// infinity-Laplacian, and the bump-kernel mollifier.

#pragma once

#include <optional>

#include "blowup/scalar_fn.hpp"

namespace blowup {

/// Default differentiation step: balances truncation against rounding.
inline double default_diff_step(double r) {
    return std::max(1e-4, 1e-4 * std::abs(r));
}

/// Central differences for (f', f'') at r with one Richardson level.
/// Requires [r - 2 h0, r + 2 h0] inside the domain of f.
std::pair<double, double> numeric_derivatives(const ScalarFn& f, double r, double h0);

/// A radial candidate u(x) = phi(|x|).  Derivatives either closed-form or
/// by numeric differentiation of phi.
class RadialProfile {
public:
    RadialProfile() = default;

    static RadialProfile closed_form(ScalarFn phi, ScalarFn d1, ScalarFn d2);
    static RadialProfile numeric(ScalarFn phi, double h0 = 0.0); // h0 = 0: per-point default

    double value(double r) const;
    double d1(double r) const;
    double d2(double r) const;
    double lo() const { return phi_.lo(); }
    double hi() const { return phi_.hi(); }
    const ScalarFn& phi() const { return phi_; }

    /// Spot-checks closed-form derivatives against central differences at
    /// n points of (a, b); throws Error if relative disagreement exceeds tol.
    void validate_derivatives(double a, double b, int n = 16, double tol = 1e-6) const;

private:
    ScalarFn phi_;
    std::optional<ScalarFn> d1_, d2_;
    double h0_ = 0.0;
};

/// phi''(r) * phi'(r)^2, the value of the infinity-Laplacian on u = phi(|x|).
double infinity_laplacian_radial(const RadialProfile& p, double r);

/// omega_delta(t) = omega(t/delta)/delta with omega(t) = c exp(-1/(1-t^2))
/// on (-1, 1), zero outside; c fixes unit mass.
class BumpKernel {
public:
    explicit BumpKernel(double delta);

    double operator()(double t) const;
    double delta() const { return delta_; }

    /// Unit-mass check: |integral - 1|, computed by adaptive quadrature.
    double mass_defect() const;

private:
    double delta_;
};

/// Convolution (omega_delta * f)(t) by adaptive quadrature (abs tol 1e-9).
/// f is extended by 0 below its domain and clamped above it.
double mollify(const ScalarFn& f, double delta, double t);

} // namespace blowup
