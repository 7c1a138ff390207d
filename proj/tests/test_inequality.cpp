#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blowup/inequality.hpp"

using namespace blowup;

namespace {

ScalarFn fn(const char* text, const char* var = "t", double lo = 0.0) {
    return ScalarFn::from_text(text, var, lo,
                               std::numeric_limits<double>::infinity(), false);
}

} // namespace

TEST_CASE("window comparison inequality: exact value on the identity") {
    // H(t) = t, eta(t) = t/2 = inf of H over (t/2, 2t); alpha = 1/2 on [1, e]
    ScalarFn H = fn("t");
    ScalarFn eta = fn("t/2");
    LemmaReport rep = lemma1_check(eta, H, 0.5, 2.0, 2.0, 1.0, std::exp(1.0));
    CHECK(rep.pass);
    CHECK(rep.lhs == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(rep.rhs_core == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.C_emp == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("window comparison inequality: precondition is enforced") {
    ScalarFn H = fn("t");
    ScalarFn too_big = fn("t"); // exceeds the window infimum t/2
    CHECK_THROWS_AS(lemma1_check(too_big, H, 0.5, 2.0, 2.0, 1.0, 4.0), Error);
}

TEST_CASE("window comparison inequality: both backends agree") {
    PiecewiseConstant H({0.25, 4.0}, {1.0});
    PiecewiseConstant eta({0.25, 4.0}, {1.0});
    LemmaReport exact = lemma1_check(eta, H, 0.5, 2.0, 2.0, 1.0, 2.0);
    ScalarFn Hs = fn("1", "t", 0.2);
    ScalarFn es = fn("1", "t", 0.2);
    LemmaReport quad = lemma1_check(es, Hs, 0.5, 2.0, 2.0, 1.0, 2.0);
    double sqrt2 = std::sqrt(2.0);
    CHECK(exact.lhs == doctest::Approx(4.0 * (sqrt2 - 1) * (sqrt2 - 1)).epsilon(1e-9));
    CHECK(exact.rhs_core == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(quad.lhs == doctest::Approx(exact.lhs).epsilon(1e-6));
    CHECK(quad.C_emp == doctest::Approx(exact.C_emp).epsilon(1e-6));
}

TEST_CASE("iterated integral inequality: beta-function oracle") {
    // eta = 1, alpha = 1/2 on [0, 1]: lhs = 2/3, rhs = B(3/2, 3/2) = pi/8
    ScalarFn eta = fn("1", "t", -1.0);
    LemmaReport rep = lemma2_check(eta, 0.5, 0.0, 1.0);
    CHECK(rep.pass);
    CHECK(rep.lhs == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(rep.rhs_core == doctest::Approx(std::acos(-1.0) / 8.0).epsilon(1e-5));
    CHECK(rep.C_emp == doctest::Approx(16.0 / (3.0 * std::acos(-1.0))).epsilon(1e-5));

    PiecewiseConstant pw({0.0, 1.0}, {1.0});
    LemmaReport exact = lemma2_check(pw, 0.5, 0.0, 1.0);
    CHECK(exact.lhs == doctest::Approx(rep.lhs).epsilon(1e-6));
    CHECK(exact.rhs_core == doctest::Approx(rep.rhs_core).epsilon(1e-5));
}

TEST_CASE("tail substitution identity: the constant is exactly alpha") {
    ScalarFn eta = fn("1", "t", -1.0);
    LemmaReport rep = lemma3_check(eta, 0.5, 0.0, 1.0);
    CHECK(rep.pass);
    CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.rhs_core == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(rep.C_emp == doctest::Approx(0.5).epsilon(1e-4));

    // piecewise-constant backend telescopes exactly for any alpha
    PiecewiseConstant pw({0.0, 0.5, 1.0}, {1.0, 3.0});
    for (double alpha : {0.25, 0.5, 0.75}) {
        LemmaReport r = lemma3_check(pw, alpha, 0.0, 1.0);
        CHECK(r.C_emp == doctest::Approx(alpha).epsilon(1e-12));
    }
    CHECK_THROWS_AS(lemma3_check(eta, 1.0, 0.0, 1.0), Error); // needs alpha < 1
}

TEST_CASE("doubling-interval comparison: logarithmic oracle") {
    // p = 1/xi, r_star = 1, gamma = 1, r0 = e, lambda = 2, r = e^2
    ScalarFn p = fn("1/t", "t", 0.5);
    double e2 = std::exp(2.0);
    LemmaReport rep = lemma4_check(p, 1.0, 2.0, 1.0, std::exp(1.0), e2);
    CHECK(rep.pass);
    CHECK(rep.C_emp == doctest::Approx((2.0 + std::log(2.0)) / 2.0).epsilon(1e-6));

    // hypothesis violation: constant p has r p(r) / integral -> unbounded near r_star
    ScalarFn flat = fn("1");
    CHECK_THROWS_AS(lemma4_check(flat, 0.1, 2.0, 1.0, 1.001, 4.0), Error);
}

TEST_CASE("seeded battery passes and stays in a finite envelope") {
    for (int lemma = 1; lemma <= 4; ++lemma) {
        CAPTURE(lemma);
        auto rows = lemma_battery(lemma, 30, 7);
        REQUIRE(rows.size() == 30);
        for (const auto& row : rows) {
            CAPTURE(row.index);
            CHECK(row.pass);
            CHECK(row.C_emp > 1e-6);
            CHECK(row.C_emp < 1e6);
            CHECK(std::isfinite(row.lhs));
            CHECK(std::isfinite(row.rhs_core));
        }
    }
}

TEST_CASE("battery is deterministic in the seed") {
    auto a = lemma_battery(2, 10, 42);
    auto b = lemma_battery(2, 10, 42);
    auto c = lemma_battery(2, 10, 43);
    REQUIRE(a.size() == b.size());
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].lhs == b[i].lhs);
        CHECK(a[i].C_emp == b[i].C_emp);
        if (a[i].lhs != c[i].lhs) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("battery CSV shape") {
    auto rows = lemma_battery(1, 5, 7);
    std::ostringstream os;
    battery_csv(os, rows);
    std::string text = os.str();
    CHECK(text.rfind("lemma,index,seed,alpha,param,lhs,rhs_core,C_emp,pass", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6); // header + 5 rows
}
