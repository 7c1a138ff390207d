/// @file minorant.hpp
/// Smooth nondecreasing minorant construction: from a positive H and mu > 1,
/// build h <= H with a doubling property while preserving convergence of
/// the integral of (h(t) t)^(-1/4).

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "blowup/piecewise.hpp"
#include "blowup/scalar_fn.hpp"

namespace blowup {

/// Infimum of H over the open window (t/mu, t*mu), by log-spaced sampling
/// (default 512 points) with one local refinement pass around the minimum.
double window_inf(const ScalarFn& H, double mu, double t, int samples = 512);

struct MinorantDiagnostics {
    double t_top = 0.0;          // last level edge; values beyond are clamped
    bool truncated = false;      // construction cut off at t_max
    int levels = 0;
    double integral_pre = 0.0;   // integral of (htilde(t) t)^(-1/4) over [1, t_top]
    double integral_eta = 0.0;   // integral of (eta(t) t)^(-1/4) over [1, t_top]
    double integral_bound = 0.0; // mu^(1/2) / (1 - mu^(-1/16))
    double grid_delta = 0.0;     // relative change of the levels under grid halving
    double h_min_01 = 0.0;       // minimum of h on a sample of (0, 1]
    bool eta_convergence_warning = false; // tail test on eta did not report convergence
};

class MinorantResult {
public:
    double mu() const { return mu_; }

    /// Final smooth minorant (mollified, evaluated by quadrature per call).
    double h(double t) const;

    /// Pre-mollification piecewise function, extended to the real axis.
    double htilde(double t) const;

    /// Window infimum of H, interpolated from the construction grid.
    double eta(double t) const;

    int levels() const { return static_cast<int>(levels_.size()); }
    const PiecewiseLinear& level(int k) const; // k = 1..levels()
    double t_k(int k) const;                   // mu^(k/4)

    const MinorantDiagnostics& diagnostics() const { return diag_; }

    /// Log-grid tabulation of h as a fast interpolating ScalarFn.
    ScalarFn tabulated(double t_lo, double t_hi, int points = 1024) const;

private:
    friend MinorantResult build_minorant(const ScalarFn&, double, double, int);

    double mu_ = 0.0;
    std::vector<PiecewiseLinear> levels_;
    // eta on the uniform log grid u0 + j*du used by the construction
    double eta_u0_ = 0.0, eta_du_ = 0.0;
    std::vector<double> eta_;
    // inf of H over (t, 1] tabulated on a descending-from-1 log grid
    std::vector<double> below_x_, below_inf_;
    MinorantDiagnostics diag_;
};

/// Executes the inductive two-case construction on levels t_k = mu^(k/4)
/// until t_k >= t_max, extends below 1 and by 0 on (-inf, 0], and mollifies
/// with kernel scale 1/2 and argument shift 1/2.
MinorantResult build_minorant(const ScalarFn& H, double mu, double t_max,
                              int grid_per_window = 512);

struct MinorantReport {
    bool minorant_ok = false;   // h <= H on the sample grid
    bool monotone_ok = false;   // h nondecreasing on the sample grid
    bool doubling_ok = false;   // h(alpha t) / h(t) finite for t >= 2
    bool integral_ok = false;   // integral ratio within the stated factor
    double beta_empirical = 0.0;
    double integral_ratio = 0.0;
    double integral_bound = 0.0;
    double violation_at = 0.0;  // location of the first failed sample, if any
    std::string notes;

    bool all_pass() const { return minorant_ok && monotone_ok && doubling_ok && integral_ok; }
    std::string summary() const;
};

/// Checks the four minorant properties on deterministic sample grids.
/// h_override, when set, replaces res.h (used to exercise fault reporting).
MinorantReport verify_minorant(const MinorantResult& res, const ScalarFn& H,
                               double mu, double alpha,
                               const std::function<double(double)>& h_override = {});

} // namespace blowup
