/// @file witness.hpp
/// Closed-form nontrivial radial subsolutions for the existence regimes of
/// the parametric family, and their numerical verification.

#pragma once

#include <array>
#include <ostream>
#include <vector>

#include "blowup/criteria.hpp"
#include "blowup/radial.hpp"

namespace blowup {

struct Witness {
    RadialProfile profile; // phi on (r0, infinity); the glued value is 0 on [0, r0]
    double r0 = 0.0;
    NonlinearitySpec spec;
    int example = 0; // 1, 2 or 3
    std::string formula;
};

/// phi(r) = r^a - r0^a with a = -(4+s)/(lambda-3).
/// Requires lambda > 3, s < -lambda-1, r0 > 0.
Witness example1_witness(double lambda, double s, double r0, double c0 = 1.0);

/// phi(r) = r ln^m(r) - r0 ln^m(r0) with m = -(mu+1)/(lambda-3), at the
/// critical s = -lambda-1.  Requires lambda > 3, mu < -1.  Searches upward
/// from the given r0 for the smallest sampled cutoff where the subsolution
/// check passes and records it.
Witness example2_witness(double lambda, double mu, double r0, double c0 = 1.0);

/// phi(r) = exp(r^b) - exp(r0^b) with b = (4+s)/(4-nu), for lambda = 3.
/// Requires nu > 4, s < -4.  Same upward cutoff search as above.
Witness example3_witness(double nu, double s, double r0, double c0 = 1.0);

/// Right-hand side f(r, u) = c0 (1+r)^s ln^mu(2+r) u^lambda ln^nu(2+u).
double family_rhs(const NonlinearitySpec& spec, double r, double u);

struct SubsolutionReport {
    bool pass = false;
    int violations = 0;
    double max_ratio = 0.0;      // max of rhs/lhs over the grid
    double argmax_r = 0.0;
    double ratio_at_rmax = 0.0;
    double max_admissible_c0 = 0.0; // c0 / max_ratio (the family is linear in c0)
    std::vector<std::array<double, 4>> rows; // (r, lhs, rhs, ratio) when kept
};

/// Log-spaced grid over (r0, r_max]: lhs = phi'' (phi')^2 against
/// rhs = f(r, phi(r)).  pass means rhs <= lhs at every grid point.  The
/// glued region r <= r0 holds trivially (u = 0, so rhs = 0 <= lhs = 0).
SubsolutionReport verify_subsolution(const Witness& w, double r_max,
                                     int grid_points, bool keep_rows = false);

/// CSV with header: r,lhs,rhs,ratio (requires keep_rows = true).
void subsolution_csv(std::ostream& os, const SubsolutionReport& rep);

} // namespace blowup
