/// @file criteria.hpp
/// Integral convergence tests over doubling windows and the analytic
/// trivial-only / nontrivial-exists classifier for the parametric
/// right-hand-side family c0 (1+|x|)^s ln^mu(2+|x|) u^lambda ln^nu(2+u).

#pragma once

#include <string>
#include <vector>

#include "blowup/scalar_fn.hpp"

namespace blowup {

struct NonlinearitySpec {
    double c0 = 1.0;
    double lambda = 4.0;
    double s = 0.0;
    double mu_log = 0.0; // exponent of ln(2+|x|)
    double nu_log = 0.0; // exponent of ln(2+u); nonzero only with lambda = 3
    double sigma = 2.0;
    double theta = 2.0;
    double r_star = 1.0;

    void validate() const; // throws Error on c0 <= 0, sigma <= 1, theta <= 1, r_star <= 0
};

enum class Convergence { Converges, Diverges, Inconclusive };

struct ConvergenceVerdict {
    Convergence status = Convergence::Inconclusive;
    double tail_exponent = 0.0;        // fitted decay exponent of window integrals in k
    double tail_ratio = 1.0;           // median ratio I_{k+1}/I_k over the last windows
    std::vector<double> window_integrals;
    std::string rule;                  // which decision branch fired

    std::string status_text() const;
};

/// Tests convergence of the integral of (g(t) t)^{-1/4} over (1, infinity).
ConvergenceVerdict check_g_condition(const ScalarFn& g);

/// Tests divergence of the integral of q over (r_star, infinity).
ConvergenceVerdict check_q_condition(const ScalarFn& q, double r_star);

/// The pair (q, g) realizing the lower bound q(r) g(t) for the family, with
/// window parameters sigma = theta = 2: q(r) = 4^{-lambda} r^lambda c(r/2),
/// g(t) = t^lambda.  With a u-side log factor (nu_log != 0, lambda = 3) the
/// bound is adjusted: q(r) = min{c(r/2), c(2r)} r^3 / 64 on r >= 4 and
/// g(t) = t^3 ln^nu(2+t).
std::pair<ScalarFn, ScalarFn> derive_q_g(const NonlinearitySpec& spec);

enum class Classification { TrivialOnly, NontrivialExists, Inconclusive };

struct ClassificationVerdict {
    Classification status = Classification::Inconclusive;
    std::string rule;             // decision rule that fired
    bool witness_present = false; // iff status == NontrivialExists
    bool witness_formula_known = false;
    int witness_example = 0;      // 1, 2 or 3 when a formula exists
    double witness_exponent = 0.0;
    std::string witness_formula;

    std::string status_text() const;
};

/// Analytic decision rules for the parametric family.
ClassificationVerdict classify(const NonlinearitySpec& spec);

} // namespace blowup
