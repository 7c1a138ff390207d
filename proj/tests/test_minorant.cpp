#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "blowup/minorant.hpp"

using namespace blowup;

namespace {

const double kMu = std::sqrt(2.0);

ScalarFn fn(const char* text) {
    return ScalarFn::from_text(text, "t", 0.0,
                               std::numeric_limits<double>::infinity(), true);
}

ScalarFn seeded_piecewise(std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> level(std::log(0.5), std::log(2.0));
    const int n = 160;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = std::exp(std::log(1e-4) + (std::log(1e7) - std::log(1e-4)) * i / (n - 1.0));
        y[i] = std::exp(level(rng));
    }
    return ScalarFn::from_samples(std::move(x), std::move(y), true);
}

} // namespace

TEST_CASE("window infimum on monotone input") {
    ScalarFn H = fn("t");
    // inf over (t/mu, t*mu) of the identity is the left edge
    CHECK(window_inf(H, 2.0, 4.0) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(window_inf(H, kMu, 8.0) == doctest::Approx(8.0 / kMu).epsilon(1e-3));
    ScalarFn V = fn("(t-4)^2+1");
    CHECK(window_inf(V, 2.0, 4.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("construction diagnostics") {
    ScalarFn H = fn("t^4");
    MinorantResult res = build_minorant(H, kMu, 1e4);
    const MinorantDiagnostics& d = res.diagnostics();
    CHECK(d.truncated);
    CHECK(d.levels == static_cast<int>(
              std::ceil(4.0 * std::log(1e4) / std::log(kMu))));
    CHECK(d.t_top >= 1e4);
    CHECK(d.integral_bound ==
          doctest::Approx(std::sqrt(kMu) / (1.0 - std::pow(kMu, -1.0 / 16.0))));
    CHECK_FALSE(d.eta_convergence_warning);
    CHECK(d.h_min_01 > 0.0); // smooth positive extension near 0
    CHECK(d.grid_delta < 1e-3);
}

TEST_CASE("four properties hold across representative inputs") {
    struct Case {
        const char* name;
        ScalarFn H;
    };
    Case cases[] = {
        {"pure power", fn("t^4")},
        {"oscillating power",
         ScalarFn::from_callable(
             [](double t) { return std::pow(t, 4) * (1.0 + 0.5 * std::sin(std::log(t))); },
             "t^4 with a log-periodic ripple", 0.0,
             std::numeric_limits<double>::infinity(), true)},
        {"power with log", fn("t^3*ln(2+t)^5")},
        {"constant", fn("5")},
        {"seeded piecewise", seeded_piecewise(91u)},
    };
    for (auto& c : cases) {
        CAPTURE(c.name);
        MinorantResult res = build_minorant(c.H, kMu, 1e4, 256);
        MinorantReport rep = verify_minorant(res, c.H, kMu, 0.5);
        CAPTURE(rep.summary());
        CHECK(rep.minorant_ok);
        CHECK(rep.monotone_ok);
        CHECK(rep.doubling_ok);
        CHECK(rep.integral_ok);
        CHECK(rep.integral_ratio <= rep.integral_bound);
    }
}

TEST_CASE("minorant sits below the input") {
    ScalarFn H = fn("t^4");
    MinorantResult res = build_minorant(H, kMu, 1e4);
    for (double t : {2.0, 5.0, 17.0, 120.0, 900.0}) {
        // the level caps are window sups of eta, so h can locally exceed
        // eta; the guaranteed pointwise bound is H itself
        CHECK(res.h(t) <= H(t) * (1 + 1e-9));
        CHECK(res.h(t) > 0.0);
    }
}

TEST_CASE("levels only move down and stabilize") {
    ScalarFn H = fn("t^4");
    MinorantResult res = build_minorant(H, kMu, 1e4);
    int K = res.levels();
    for (int k = 2; k <= K; ++k) {
        // each refinement is pointwise <= its predecessor where both are built
        const PiecewiseLinear& prev = res.level(k - 1);
        const PiecewiseLinear& cur = res.level(k);
        for (double t = 1.0; t <= prev.back_x(); t *= 1.7)
            CHECK(cur(t) <= prev(t) * (1 + 1e-12));
    }
    // far horizon does not change the minorant at moderate arguments
    MinorantResult far = build_minorant(H, kMu, 1e6);
    for (double t : {2.0, 10.0, 50.0})
        CHECK(res.h(t) == doctest::Approx(far.h(t)).epsilon(1e-7));
}

TEST_CASE("tabulated form tracks the quadrature form") {
    ScalarFn H = fn("t^3*ln(2+t)^5");
    MinorantResult res = build_minorant(H, kMu, 1e4, 256);
    ScalarFn tab = res.tabulated(0.01, 1e4, 2048);
    for (double t : {0.5, 1.0, 3.0, 42.0, 800.0, 9000.0})
        CHECK(tab(t) == doctest::Approx(res.h(t)).epsilon(1e-3));
}

TEST_CASE("fault injection is reported") {
    ScalarFn H = fn("t^4");
    MinorantResult res = build_minorant(H, kMu, 1e4, 256);
    // an override exceeding H must fail the minorant property
    MinorantReport bad = verify_minorant(res, H, kMu, 0.5,
                                         [&H](double t) { return 2.0 * H(t); });
    CHECK_FALSE(bad.minorant_ok);
    CHECK(bad.violation_at > 0.0);
    CHECK_FALSE(bad.all_pass());
    // a decreasing override must fail monotonicity
    MinorantReport dec = verify_minorant(res, H, kMu, 0.5,
                                         [](double t) { return 1.0 / (1.0 + t); });
    CHECK_FALSE(dec.monotone_ok);
}

TEST_CASE("input validation") {
    ScalarFn H = fn("t^4");
    CHECK_THROWS_AS(build_minorant(H, 1.0, 1e4), Error);  // mu must exceed 1
    CHECK_THROWS_AS(build_minorant(H, kMu, 0.5), Error);  // horizon below 1
    ScalarFn bad = ScalarFn::from_callable([](double t) { return t - 10.0; },
                                           "t-10", 0.0,
                                           std::numeric_limits<double>::infinity());
    CHECK_THROWS(build_minorant(bad, kMu, 1e3)); // H must stay positive
}
