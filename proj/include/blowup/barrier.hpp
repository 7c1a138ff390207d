/// @file barrier.hpp
/// Barrier pipeline: the radial coefficient p(r), two solvers for the
/// Cauchy problem w'' (w')^2 = (1/2) p(r) h(w/r), finite blow-up radius
/// detection, and assembly of the nonexistence certificate.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "blowup/criteria.hpp"
#include "blowup/scalar_fn.hpp"

namespace blowup {

inline constexpr const char* kLibraryVersion = "1.0.0";

/// Thrown when M_delta(R_star + 1) = 0: the ramp would start in a region
/// without mass and R_star has to move.
class ShiftRStar : public Error {
public:
    ShiftRStar(const std::string& what, double suggested)
        : Error(what), suggested_(suggested) {}
    /// Nearest radius with M_delta > 0, minus 1; NaN when none was found.
    double suggested_R_star() const { return suggested_; }

private:
    double suggested_;
};

class PFunction {
public:
    PFunction() = default;

    /// Step-2 construction: Q(rho) = sup of q over (sigma^(-1/4) rho,
    /// sigma^(1/4) rho) beyond r_star, mollified at scale delta, capped by
    /// 1/r, zero up to R_star with the smooth ramp on (R_star, R_star+1].
    /// Requires R_star > r_star and R_star > 1/(sigma^(1/4) - 1).
    static PFunction construct(const ScalarFn& q, double sigma, double delta,
                               double R_star, double r_star,
                               double r_table_end = 2.2e6);

    /// Wraps a raw coefficient directly (no ramp, no mollification).
    /// Solutions driven by a test-mode p never produce certificates.
    static PFunction test_mode(std::function<double(double)> p, std::string desc);

    double operator()(double r) const;
    double R_star() const { return R_star_; }
    double delta() const { return delta_; }
    bool is_test_mode() const { return test_mode_; }
    const std::string& description() const { return desc_; }

    /// M_delta = min{Q_delta, 1/r}, by quadrature (pipeline mode only).
    double M_delta(double r) const;

private:
    bool test_mode_ = false;
    std::function<double(double)> raw_;
    std::string desc_;
    double sigma_ = 0.0, delta_ = 0.0, R_star_ = 0.0, r_star_ = 0.0;
    double ramp_value_ = 0.0;
    // M_delta tabulated on [R_star + 1, r_table_end], log-log interpolation
    std::vector<double> tab_lnr_, tab_lnp_;
    std::function<double(double)> Q_; // window sup of q
};

enum class SolveStatus { Completed, BlowUp };

struct SolverStats {
    long steps = 0;
    long rejected = 0;
    long rhs_evals = 0;
    int picard_iterations = 0;
    double min_step = 0.0;
    double residual = 0.0; // sup residual of the integral form at samples
};

struct BarrierSolution {
    double epsilon = 0.0;
    SolveStatus status = SolveStatus::Completed;
    double r_end = 0.0;          // last integrated radius
    double R_max_lo = 0.0;       // blow-up bracket (status == BlowUp)
    double R_max_hi = 0.0;
    std::vector<double> r, w, dw;
    SolverStats stats;

    /// Cubic Hermite interpolation of w between trajectory samples.
    double w_at(double radius) const;
    double dw_at(double radius) const;
    double R_mid() const { return 0.5 * (R_max_lo + R_max_hi); }
};

struct SolveOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double w_cap = 1e12;
    double r_end = 1e6;
    /// Radii in h(w/r) are clamped below at this value; needed when a
    /// test-mode p is positive near 0 and h grows fast (the inner integral
    /// would not converge otherwise).  0 disables the clamp.
    double inner_floor = 0.0;
    /// Accepted-step collapse threshold (relative to max(1, r)) required
    /// before a cap breach is declared a blow-up.
    double collapse_step = 1e-4;
    /// Step ceiling: dr <= max(max_step_abs, max_step_rel * r).
    double max_step_abs = 0.01;
    double max_step_rel = 0.04;
};

/// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) on the system
/// y = (w')^3, y' = (3/2) p(r) h(w/r), w' = y^(1/3).
BarrierSolution integrate_ode(const PFunction& p, const ScalarFn& h,
                              double epsilon, double w_cap,
                              SolveOptions opts = {});

struct PicardOptions {
    double tol = 1e-10;
    int max_iterations = 200;
    double w_cap = 1e12;
    double inner_floor = 0.0;
    double dense_step = 1.0 / 4096.0; // cell width on the dense part of the grid
    double dense_until = 32.0;        // geometric coarsening beyond this radius
    double far_ratio = 5e-4;          // relative cell width past dense_until
};

/// Fixed-point iteration of the integral form
/// w(r) = eps + int_0^r (3/2 int_0^rho p(xi) h(w/xi) dxi)^(1/3) drho
/// on a composite quadrature grid.  Divergence past w_cap is reported as
/// BlowUp; non-contraction within the iteration budget is a SolverError.
BarrierSolution solve_picard(const PFunction& p, const ScalarFn& h,
                             double epsilon, double r_end,
                             PicardOptions opts = {});

struct Certificate {
    NonlinearitySpec spec;
    double epsilon = 0.0;
    double R_star = 0.0;
    double delta = 0.0;
    double R_max_lo = 0.0, R_max_hi = 0.0;
    double rtol = 0.0, atol = 0.0, w_cap = 0.0;
    std::string conclusion;

    std::string to_json() const; // deterministic field order and formatting
};

struct CertifyOutcome {
    bool certified = false;
    Certificate certificate; // meaningful iff certified
    BarrierSolution solution;
    bool q_diverges = false;
    bool g_converges = false;
    std::string report; // one-paragraph human summary
};

/// Full pipeline: derived (q, g) -> window sup H -> minorant h ->
/// construct p -> integrate; emits a certificate on blow-up.
CertifyOutcome certify_nonexistence(const NonlinearitySpec& spec, double epsilon,
                                    double R_star, SolveOptions opts = {});

/// True iff the interpolated barrier dominates u at every sample
/// (r, value); the first violation, if any, is written to `violation`.
bool compare_barrier(const std::vector<std::pair<double, double>>& u_samples,
                     const BarrierSolution& sol, std::string* violation = nullptr);

} // namespace blowup
