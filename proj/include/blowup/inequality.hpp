/// @file inequality.hpp
/// Numerical validation of the four supporting integral inequalities:
/// both sides are computed on test functions and the empirical constant
/// C_emp = lhs / rhs_core is reported.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "blowup/piecewise.hpp"
#include "blowup/scalar_fn.hpp"

namespace blowup {

struct LemmaReport {
    int lemma = 0;
    double lhs = 0.0;
    double rhs_core = 0.0;
    double C_emp = 0.0;
    bool pass = false; // both sides finite, C_emp > 0 (or flagged degenerate)
    bool degenerate = false;
    std::string note;
};

/// lhs = (integral of eta^-alpha t^(alpha-1) over [M1, M2])^(1/alpha),
/// rhs_core = integral of dt / H over [M1, M2].
/// Requires eta <= inf over (t/mu, t mu) of H (validated by sampling),
/// M2 >= nu M1 and 0 < alpha <= 1.
LemmaReport lemma1_check(const ScalarFn& eta, const ScalarFn& H, double alpha,
                         double mu, double nu, double M1, double M2);
LemmaReport lemma1_check(const PiecewiseConstant& eta, const PiecewiseConstant& H,
                         double alpha, double mu, double nu, double M1, double M2);

/// lhs = integral over [r1, r2] of (integral of eta over [r1, rho])^alpha,
/// rhs_core = integral of (1 - xi/r2)^alpha (xi eta(xi))^alpha.
LemmaReport lemma2_check(const ScalarFn& eta, double alpha, double r1, double r2);
LemmaReport lemma2_check(const PiecewiseConstant& eta, double alpha, double r1, double r2);

/// With kappa(xi) = integral of eta over [xi, r2]:
/// lhs = (integral of eta over [r1, r2])^alpha,
/// rhs_core = integral of eta(xi) kappa^(alpha-1)(xi), counting the
/// integrand as zero wherever kappa vanishes.  Requires 0 < alpha < 1.
LemmaReport lemma3_check(const ScalarFn& eta, double alpha, double r1, double r2);
LemmaReport lemma3_check(const PiecewiseConstant& eta, double alpha, double r1, double r2);

/// C_emp = (integral of p over [r_star, lambda r]) / (integral over [r_star, r]).
/// Requires r p(r) / integral_{r_star}^r p <= gamma for sampled r >= r0.
LemmaReport lemma4_check(const ScalarFn& p, double gamma, double lambda,
                         double r_star, double r0, double r);
LemmaReport lemma4_check(const PiecewiseConstant& p, double gamma, double lambda,
                         double r_star, double r0, double r);

struct BatteryRow {
    int lemma = 0;
    int index = 0;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    double param = 0.0; // mu (lemma 1), r2 (2, 3), gamma (4)
    double lhs = 0.0;
    double rhs_core = 0.0;
    double C_emp = 0.0;
    bool pass = false;
};

/// Deterministic battery of seeded piecewise-constant test functions
/// (log-uniform levels on dyadic partitions) for one lemma.
std::vector<BatteryRow> lemma_battery(int lemma, int count, std::uint64_t seed);

/// CSV with header: lemma,index,seed,alpha,param,lhs,rhs_core,C_emp,pass
void battery_csv(std::ostream& os, const std::vector<BatteryRow>& rows);

} // namespace blowup
