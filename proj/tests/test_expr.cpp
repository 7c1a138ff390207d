#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "blowup/expr.hpp"

using namespace blowup;

static double eval(const std::string& text, double x, const char* var = "r") {
    return Expression::parse(text, var).evaluate(x);
}

TEST_CASE("arithmetic and precedence") {
    CHECK(eval("2+3*4", 0) == doctest::Approx(14.0));
    CHECK(eval("(2+3)*4", 0) == doctest::Approx(20.0));
    CHECK(eval("7-3-2", 0) == doctest::Approx(2.0));   // left-associative
    CHECK(eval("12/3/2", 0) == doctest::Approx(2.0));
    CHECK(eval("2^3^2", 0) == doctest::Approx(512.0)); // right-associative
    CHECK(eval("-2^2", 0) == doctest::Approx(-4.0));   // unary minus below ^
    CHECK(eval("2^-3", 0) == doctest::Approx(0.125));
    CHECK(eval("2*r^3", 2) == doctest::Approx(16.0));
}

TEST_CASE("functions and constants") {
    CHECK(eval("ln(e)", 0) == doctest::Approx(1.0));
    CHECK(eval("exp(1)", 0) == doctest::Approx(std::exp(1.0)));
    CHECK(eval("sqrt(r)", 9) == doctest::Approx(3.0));
    CHECK(eval("abs(-r)", 5) == doctest::Approx(5.0));
    CHECK(eval("min(r, 2)", 7) == doctest::Approx(2.0));
    CHECK(eval("max(r, 2)", 7) == doctest::Approx(7.0));
    CHECK(eval("pow(r, 3)", 2) == doctest::Approx(8.0));
    CHECK(eval("pi", 0) == doctest::Approx(std::acos(-1.0)));
    CHECK(eval("(1+r)^(-5)", 1) == doctest::Approx(std::pow(2.0, -5)));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(eval("ln(r)", -1.0), DomainError);
    CHECK_THROWS_AS(eval("ln(r)", 0.0), DomainError);
    CHECK_THROWS_AS(eval("1/r", 0.0), DomainError);
    CHECK_THROWS_AS(eval("sqrt(r)", -2.0), DomainError);
    CHECK_THROWS_AS(eval("r^(-1)", 0.0), DomainError);
    CHECK_THROWS_AS(eval("exp(r)", 1e6), DomainError); // overflow to non-finite

    Expression e = Expression::parse("ln(r)", "r");
    CHECK_FALSE(e.try_evaluate(-1.0).has_value());
    CHECK(e.try_evaluate(std::exp(2.0)).has_value());
    CHECK(*e.try_evaluate(std::exp(2.0)) == doctest::Approx(2.0));
}

TEST_CASE("parse errors carry a byte offset") {
    CHECK_THROWS_AS(Expression::parse("2+*3", "r"), ParseError);
    CHECK_THROWS_AS(Expression::parse("2+(3", "r"), ParseError);
    CHECK_THROWS_AS(Expression::parse("foo(2)", "r"), ParseError);
    CHECK_THROWS_AS(Expression::parse("t+1", "r"), ParseError); // wrong variable
    try {
        Expression::parse("1+ +", "r");
        FAIL("expected ParseError");
    } catch (const ParseError& pe) {
        CHECK(pe.offset() >= 2);
    }
}

TEST_CASE("print round-trip reproduces an equivalent tree") {
    const char* cases[] = {
        "2+3*4",       "2^3^2",           "-(1+r)^(-5)",   "min(r^2, max(r, 3))",
        "ln(2+r)^5",   "exp(r^(1/2))",    "abs(r-3)/(r+1)", "sqrt(1+r^2)",
        "4^(-4)*r^4*(1+r/2)^(-5)",        "r*ln(r)^2 - 2",
    };
    std::mt19937 rng(20240915u);
    std::uniform_real_distribution<double> pick(0.5, 20.0);
    for (const char* text : cases) {
        CAPTURE(text);
        Expression e = Expression::parse(text, "r");
        Expression round = Expression::parse(e.print(), "r");
        CHECK(e.equivalent(round));
        for (int i = 0; i < 20; ++i) {
            double x = pick(rng);
            auto a = e.try_evaluate(x), b = round.try_evaluate(x);
            REQUIRE(a.has_value() == b.has_value());
            if (a) CHECK(*a == doctest::Approx(*b).epsilon(1e-15));
        }
    }
}

TEST_CASE("evaluation is pure and deterministic") {
    Expression e = Expression::parse("r^3*ln(2+r)", "r");
    double first = e.evaluate(7.5);
    for (int i = 0; i < 100; ++i) CHECK(e.evaluate(7.5) == first);
}
