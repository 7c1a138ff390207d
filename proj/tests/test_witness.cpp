#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blowup/witness.hpp"

using namespace blowup;

TEST_CASE("family right-hand side") {
    NonlinearitySpec spec;
    spec.c0 = 2.0;
    spec.lambda = 4;
    spec.s = -5;
    double u = std::exp(1.0) - 2.0;
    CHECK(family_rhs(spec, 1.0, u) ==
          doctest::Approx(2.0 * std::pow(2.0, -5) * std::pow(u, 4)));
    CHECK(family_rhs(spec, 1.0, 0.0) == 0.0);
    CHECK(family_rhs(spec, 1.0, -3.0) == 0.0); // glued region contributes nothing

    spec.mu_log = -2;
    CHECK(family_rhs(spec, 1.0, u) ==
          doctest::Approx(2.0 * std::pow(2.0, -5) * std::pow(u, 4) /
                          std::pow(std::log(3.0), 2)));
}

TEST_CASE("pure power witness: exponent and asymptotic ratio") {
    Witness w = example1_witness(4, -6, 1.0);
    CHECK(w.example == 1);
    // a = -(4+s)/(lambda-3) = 2
    CHECK(w.profile.value(3.0) == doctest::Approx(8.0)); // 3^2 - 1
    CHECK(w.profile.d1(3.0) == doctest::Approx(6.0));
    CHECK(w.profile.d2(3.0) == doctest::Approx(2.0));
    w.profile.validate_derivatives(1.5, 100.0);

    SubsolutionReport rep = verify_subsolution(w, 1e4, 2000);
    CHECK(rep.pass);
    CHECK(rep.violations == 0);
    // ratio tends to c0 / (a^3 (a-1)) = 1/8 from below
    CHECK(rep.max_ratio < 0.125);
    CHECK(rep.ratio_at_rmax == doctest::Approx(0.125).epsilon(2e-3));
    CHECK(rep.max_admissible_c0 > 8.0);

    // a = 3/2 at lambda = 5, s = -7: limit ratio 16/27
    SubsolutionReport rep2 = verify_subsolution(example1_witness(5, -7, 2.0), 1e6, 2000);
    CHECK(rep2.pass);
    CHECK(rep2.ratio_at_rmax == doctest::Approx(16.0 / 27.0).epsilon(2e-2));
}

TEST_CASE("pure power witness: parameter validation") {
    CHECK_THROWS_AS(example1_witness(4, -5, 1.0), Error);  // needs s < -lambda-1
    CHECK_THROWS_AS(example1_witness(3, -6, 1.0), Error);  // needs lambda > 3
    CHECK_THROWS_AS(example1_witness(4, -6, -1.0), Error); // needs r0 > 0
}

TEST_CASE("log-corrected witness at the critical power") {
    Witness w = example2_witness(4, -2, std::exp(2.0));
    CHECK(w.example == 2);
    CHECK(w.spec.s == doctest::Approx(-5.0)); // critical s = -lambda - 1
    // m = -(mu+1)/(lambda-3) = 1: phi = r ln r - r0 ln r0
    double r = 50.0;
    CHECK(w.profile.value(r) ==
          doctest::Approx(r * std::log(r) - w.r0 * std::log(w.r0)));
    CHECK(w.profile.d1(r) == doctest::Approx(std::log(r) + 1.0));
    CHECK(w.profile.d2(r) == doctest::Approx(1.0 / r));
    w.profile.validate_derivatives(w.r0 * 1.5, 1e3);

    SubsolutionReport rep = verify_subsolution(w, 1e5, 2000);
    CHECK(rep.pass);
    // the ratio approaches c0/m = 1 but stays strictly below it
    CHECK(rep.max_ratio < 1.0);
    CHECK(rep.ratio_at_rmax > 0.5);
    CHECK_THROWS_AS(example2_witness(4, -0.5, 2.0), Error); // needs mu < -1
    CHECK_THROWS_AS(example2_witness(3, -2, 2.0), Error);
}

TEST_CASE("stretched-exponential witness at the cubic power") {
    Witness w = example3_witness(8, -6, 1.0, 1.0 / 32.0);
    CHECK(w.example == 3);
    // b = (4+s)/(4-nu) = 1/2
    double r = 9.0;
    double phi = std::exp(3.0) - std::exp(std::sqrt(w.r0));
    CHECK(w.profile.value(r) == doctest::Approx(phi));
    w.profile.validate_derivatives(w.r0 * 1.2, 400.0);

    SubsolutionReport rep = verify_subsolution(w, 1e4, 2000);
    CHECK(rep.pass);
    // the asymptotic threshold is c0 b^-4 = 16 c0; c0 = 1/32 sits at 1/2
    CHECK(rep.ratio_at_rmax == doctest::Approx(0.5).epsilon(0.05));

    Witness hot = w; // same profile, 32x the coefficient: inadmissible
    hot.spec.c0 = 1.0;
    SubsolutionReport bad = verify_subsolution(hot, 1e4, 2000);
    CHECK_FALSE(bad.pass);
    CHECK(bad.violations > 0);
    CHECK(bad.max_admissible_c0 == doctest::Approx(1.0 / 16.0).epsilon(0.1));

    CHECK_THROWS_AS(example3_witness(4, -6, 1.0), Error); // needs nu > 4
    CHECK_THROWS_AS(example3_witness(8, -3, 1.0), Error); // needs s < -4
}

TEST_CASE("report rows and CSV") {
    Witness w = example1_witness(4, -6, 1.0);
    SubsolutionReport rep = verify_subsolution(w, 100.0, 50, true);
    REQUIRE(rep.rows.size() == 50);
    std::ostringstream os;
    subsolution_csv(os, rep);
    std::string text = os.str();
    CHECK(text.rfind("r,lhs,rhs,ratio", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 51);
}

TEST_CASE("witness scaling in c0 is linear") {
    SubsolutionReport one = verify_subsolution(example1_witness(4, -6, 1.0, 1.0), 1e3, 400);
    SubsolutionReport four = verify_subsolution(example1_witness(4, -6, 1.0, 4.0), 1e3, 400);
    CHECK(four.max_ratio == doctest::Approx(4.0 * one.max_ratio).epsilon(1e-9));
    // the admissibility envelope c0 / max_ratio is invariant under c0
    CHECK(four.max_admissible_c0 == doctest::Approx(one.max_admissible_c0).epsilon(1e-9));
}
