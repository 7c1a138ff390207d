#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blowup/radial.hpp"

using namespace blowup;

TEST_CASE("numeric derivatives of a power") {
    ScalarFn f = ScalarFn::from_text("r^3", "r");
    auto [d1, d2] = numeric_derivatives(f, 2.0, default_diff_step(2.0));
    CHECK(d1 == doctest::Approx(12.0).epsilon(1e-8));
    CHECK(d2 == doctest::Approx(12.0).epsilon(1e-5));
}

TEST_CASE("numeric profile agrees with a closed-form one") {
    ScalarFn phi = ScalarFn::from_text("r^2.5", "r");
    RadialProfile numeric = RadialProfile::numeric(phi);
    RadialProfile closed = RadialProfile::closed_form(
        phi, ScalarFn::from_text("2.5*r^1.5", "r"),
        ScalarFn::from_text("2.5*1.5*r^0.5", "r"));
    for (double r : {0.7, 1.3, 4.0, 25.0}) {
        CHECK(numeric.d1(r) == doctest::Approx(closed.d1(r)).epsilon(1e-7));
        CHECK(numeric.d2(r) == doctest::Approx(closed.d2(r)).epsilon(1e-4));
    }
    closed.validate_derivatives(0.5, 30.0);
}

TEST_CASE("derivative validation rejects a wrong closed form") {
    ScalarFn phi = ScalarFn::from_text("r^2", "r");
    RadialProfile wrong = RadialProfile::closed_form(
        phi, ScalarFn::from_text("2*r", "r"),
        ScalarFn::from_text("3", "r")); // should be 2
    CHECK_THROWS_AS(wrong.validate_derivatives(0.5, 10.0), Error);
}

TEST_CASE("radial operator value on powers") {
    // phi = r^a gives phi'' (phi')^2 = a^3 (a-1) r^(3a-4)
    ScalarFn phi = ScalarFn::from_text("r^2", "r");
    RadialProfile p = RadialProfile::closed_form(
        phi, ScalarFn::from_text("2*r", "r"), ScalarFn::from_text("2", "r"));
    CHECK(infinity_laplacian_radial(p, 3.0) == doctest::Approx(72.0));

    ScalarFn lin = ScalarFn::from_text("5*r+1", "r");
    RadialProfile q = RadialProfile::numeric(lin);
    CHECK(infinity_laplacian_radial(q, 2.0) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("bump kernel normalization and support") {
    for (double delta : {0.25, 0.5, 1.0, 3.0}) {
        BumpKernel w(delta);
        CHECK(w.mass_defect() < 1e-9);
        CHECK(w(0.3 * delta) == doctest::Approx(w(-0.3 * delta)));
        CHECK(w(delta) == 0.0);
        CHECK(w(-1.5 * delta) == 0.0);
        CHECK(w(0.0) > w(0.9 * delta));
    }
}

TEST_CASE("mollification reproduces constants and stays within bounds") {
    ScalarFn one = ScalarFn::from_callable([](double) { return 1.0; }, "one");
    CHECK(mollify(one, 1.0, 5.0) == doctest::Approx(1.0).epsilon(1e-8));

    // symmetric kernel: the identity is a fixed point away from the boundary
    ScalarFn ident = ScalarFn::from_callable([](double t) { return t; }, "t");
    CHECK(mollify(ident, 0.5, 3.0) == doctest::Approx(3.0).epsilon(1e-8));

    // monotone input stays monotone and between inf and sup
    ScalarFn step = ScalarFn::from_callable(
        [](double t) { return t < 4.0 ? 1.0 : 2.0; }, "step");
    double prev = 0.0;
    for (int i = 0; i <= 40; ++i) {
        double t = 2.0 + i * 0.1;
        double v = mollify(step, 0.5, t);
        CHECK(v >= prev - 1e-12);
        CHECK(v >= 1.0 - 1e-9);
        CHECK(v <= 2.0 + 1e-9);
        prev = v;
    }
}

TEST_CASE("mollification near the lower boundary uses the zero extension") {
    ScalarFn one = ScalarFn::from_callable([](double) { return 1.0; }, "one",
                                           0.0, std::numeric_limits<double>::infinity());
    // window centered at 0 sees half mass
    CHECK(mollify(one, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(mollify(one, 1.0, -2.0) == doctest::Approx(0.0));
}
