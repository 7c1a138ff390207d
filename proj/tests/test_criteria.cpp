#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blowup/criteria.hpp"

using namespace blowup;

static ScalarFn fn(const char* text, const char* var = "t") {
    return ScalarFn::from_text(text, var, 0.0,
                               std::numeric_limits<double>::infinity(), true);
}

TEST_CASE("value-side integral test on reference growth rates") {
    // integral of (g(t) t)^(-1/4) over (1, inf)
    CHECK(check_g_condition(fn("t^4")).status == Convergence::Converges);
    CHECK(check_g_condition(fn("t^3.2")).status == Convergence::Converges);
    CHECK(check_g_condition(fn("t^3")).status == Convergence::Diverges);
    CHECK(check_g_condition(fn("t^2")).status == Convergence::Diverges);
    CHECK(check_g_condition(fn("t^3*ln(2+t)^5")).status == Convergence::Converges);
    CHECK(check_g_condition(fn("1")).status == Convergence::Diverges);
}

TEST_CASE("space-side integral test on reference decay rates") {
    ScalarFn inv_r = ScalarFn::from_text("1/r", "r", 0.0,
                                         std::numeric_limits<double>::infinity(), true);
    CHECK(check_q_condition(inv_r, 1.0).status == Convergence::Diverges);
    ScalarFn r2 = ScalarFn::from_text("r^(-2)", "r", 0.0,
                                      std::numeric_limits<double>::infinity(), true);
    CHECK(check_q_condition(r2, 1.0).status == Convergence::Converges);
    ScalarFn rlog = ScalarFn::from_text("1/(r*ln(r))", "r", 1.0,
                                        std::numeric_limits<double>::infinity(), true);
    CHECK(check_q_condition(rlog, 2.0).status == Convergence::Diverges);
    ScalarFn rlog2 = ScalarFn::from_text("1/(r*ln(r)^2)", "r", 1.0,
                                         std::numeric_limits<double>::infinity(), true);
    CHECK(check_q_condition(rlog2, 2.0).status == Convergence::Converges);
}

TEST_CASE("verdicts carry diagnostics") {
    ConvergenceVerdict v = check_g_condition(fn("t^4"));
    CHECK_FALSE(v.window_integrals.empty());
    CHECK_FALSE(v.rule.empty());
    CHECK(v.status_text() == "Converges");
}

TEST_CASE("derived pair matches the closed form") {
    NonlinearitySpec spec;
    spec.lambda = 4;
    spec.s = -5;
    auto [q, g] = derive_q_g(spec);
    // q(r) = 4^-4 r^4 (1 + r/2)^-5, g(t) = t^4
    CHECK(q(2.0) == doctest::Approx(std::pow(4.0, -4) * 16.0 * std::pow(2.0, -5)));
    CHECK(q(10.0) == doctest::Approx(std::pow(4.0, -4) * 1e4 * std::pow(6.0, -5)));
    CHECK(g(2.0) == doctest::Approx(16.0));
    CHECK(g(1.5) == doctest::Approx(std::pow(1.5, 4)));
}

TEST_CASE("spec validation") {
    NonlinearitySpec spec;
    spec.c0 = -1;
    CHECK_THROWS_AS(spec.validate(), Error);
    spec = {};
    spec.sigma = 1.0;
    CHECK_THROWS_AS(spec.validate(), Error);
    spec = {};
    spec.nu_log = 5;
    spec.lambda = 4; // u-side log factor only covered at lambda = 3
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.lambda = 3;
    CHECK_NOTHROW(spec.validate());
}

static ClassificationVerdict classify_p(double lambda, double s, double mu = 0,
                                        double nu = 0) {
    NonlinearitySpec spec;
    spec.lambda = lambda;
    spec.s = s;
    spec.mu_log = mu;
    spec.nu_log = nu;
    return classify(spec);
}

TEST_CASE("classification of the power family") {
    CHECK(classify_p(4, -5).status == Classification::TrivialOnly);
    CHECK(classify_p(4, -4).status == Classification::TrivialOnly);
    auto v = classify_p(4, -6);
    CHECK(v.status == Classification::NontrivialExists);
    CHECK(v.witness_present);
    CHECK(v.witness_formula_known);
    CHECK(v.witness_example == 1);
    CHECK(v.witness_exponent == doctest::Approx(2.0));
    // a = -(4+s)/(lambda-3)
    CHECK(classify_p(5, -8).witness_exponent == doctest::Approx(2.0));
    CHECK(classify_p(2, -3).status == Classification::NontrivialExists);
    CHECK_FALSE(classify_p(2, -3).witness_formula_known);
    CHECK(classify_p(3, -6).status == Classification::NontrivialExists);
    CHECK_FALSE(classify_p(3, -6).witness_formula_known);
}

TEST_CASE("classification with log factors") {
    // r-side log factor at the critical power
    CHECK(classify_p(4, -5, -1).status == Classification::TrivialOnly);
    auto v = classify_p(4, -5, -2);
    CHECK(v.status == Classification::NontrivialExists);
    CHECK(v.witness_example == 2);
    CHECK(v.witness_exponent == doctest::Approx(1.0)); // m = -(mu+1)/(lambda-3)
    CHECK(classify_p(4, -4.9, -2).status == Classification::TrivialOnly);
    CHECK(classify_p(4, -5.1, -2).status == Classification::Inconclusive);

    // u-side log factor at lambda = 3
    CHECK(classify_p(3, -3.9, 0, 8).status == Classification::TrivialOnly);
    auto w = classify_p(3, -6, 0, 8);
    CHECK(w.status == Classification::NontrivialExists);
    CHECK(w.witness_example == 3);
    CHECK(w.witness_exponent == doctest::Approx(0.5)); // b = (4+s)/(4-nu)
    CHECK(classify_p(3, -6, 0, 4.5).status == Classification::NontrivialExists);
}

TEST_CASE("trivial-only verdicts are consistent with the integral tests") {
    int trivial_seen = 0, total = 0;
    for (double lambda : {3.2, 3.5, 4.0, 4.5, 5.5, 6.0}) {
        for (double ds : {-1.5, -1.0, -0.5, 0.3, 0.7, 1.2, 2.0, 3.0, 4.0}) {
            ++total;
            NonlinearitySpec spec;
            spec.lambda = lambda;
            spec.s = -lambda - 1 + ds;
            ClassificationVerdict v = classify(spec);
            if (v.status != Classification::TrivialOnly) continue;
            ++trivial_seen;
            auto [q, g] = derive_q_g(spec);
            CAPTURE(lambda);
            CAPTURE(ds);
            CHECK(check_g_condition(g).status == Convergence::Converges);
            CHECK(check_q_condition(q, spec.r_star).status == Convergence::Diverges);
        }
    }
    CHECK(total >= 50);
    CHECK(trivial_seen >= 20);
}

TEST_CASE("classification is monotone in the spatial decay rate") {
    // for fixed lambda > 3, raising s crosses from witness to trivial once
    for (double lambda : {3.5, 4.0, 5.0}) {
        int switches = 0;
        Classification prev = Classification::NontrivialExists;
        for (double s = -lambda - 4; s <= -lambda + 1.0001; s += 0.25) {
            Classification cur = classify_p(lambda, s).status;
            if (cur != prev) {
                ++switches;
                CHECK(prev == Classification::NontrivialExists);
                CHECK(cur == Classification::TrivialOnly);
            }
            prev = cur;
        }
        CHECK(switches == 1);
    }
}
