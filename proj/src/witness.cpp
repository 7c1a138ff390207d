#include "blowup/witness.hpp"

#include <cmath>

#include "blowup/common.hpp"

namespace blowup {

double family_rhs(const NonlinearitySpec& spec, double r, double u) {
    if (u <= 0.0) return 0.0;
    double v = spec.c0 * std::pow(1.0 + r, spec.s) * std::pow(u, spec.lambda);
    if (spec.mu_log != 0.0) v *= std::pow(std::log(2.0 + r), spec.mu_log);
    if (spec.nu_log != 0.0) v *= std::pow(std::log(2.0 + u), spec.nu_log);
    return v;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RadialProfile power_profile(double a, double r0) {
    double shift = std::pow(r0, a);
    auto phi = ScalarFn::from_callable(
        [a, shift](double r) { return std::pow(r, a) - shift; },
        "r^a - r0^a", r0, kInf);
    auto d1 = ScalarFn::from_callable(
        [a](double r) { return a * std::pow(r, a - 1.0); }, "a r^(a-1)", r0, kInf);
    auto d2 = ScalarFn::from_callable(
        [a](double r) { return a * (a - 1.0) * std::pow(r, a - 2.0); },
        "a(a-1) r^(a-2)", r0, kInf);
    return RadialProfile::closed_form(std::move(phi), std::move(d1), std::move(d2));
}

RadialProfile loglinear_profile(double m, double r0) {
    double shift = r0 * std::pow(std::log(r0), m);
    auto phi = ScalarFn::from_callable(
        [m, shift](double r) { return r * std::pow(std::log(r), m) - shift; },
        "r ln^m r - r0 ln^m r0", r0, kInf);
    auto d1 = ScalarFn::from_callable(
        [m](double r) {
            double L = std::log(r);
            return std::pow(L, m) + m * std::pow(L, m - 1.0);
        },
        "ln^m r + m ln^(m-1) r", r0, kInf);
    auto d2 = ScalarFn::from_callable(
        [m](double r) {
            double L = std::log(r);
            return (m / r) * std::pow(L, m - 2.0) * (L + m - 1.0);
        },
        "(m/r) ln^(m-2) r (ln r + m - 1)", r0, kInf);
    return RadialProfile::closed_form(std::move(phi), std::move(d1), std::move(d2));
}

RadialProfile stretched_exp_profile(double b, double r0) {
    double shift = std::exp(std::pow(r0, b));
    auto phi = ScalarFn::from_callable(
        [b, shift](double r) { return std::exp(std::pow(r, b)) - shift; },
        "exp(r^b) - exp(r0^b)", r0, kInf);
    auto d1 = ScalarFn::from_callable(
        [b](double r) {
            return b * std::pow(r, b - 1.0) * std::exp(std::pow(r, b));
        },
        "b r^(b-1) exp(r^b)", r0, kInf);
    auto d2 = ScalarFn::from_callable(
        [b](double r) {
            double rb = std::pow(r, b);
            return b * std::pow(r, b - 2.0) * std::exp(rb) * (b - 1.0 + b * rb);
        },
        "b r^(b-2) exp(r^b) (b - 1 + b r^b)", r0, kInf);
    return RadialProfile::closed_form(std::move(phi), std::move(d1), std::move(d2));
}

/// Quick pass/fail probe used by the upward cutoff search.
bool probe(const Witness& w, int points = 192) {
    double r_max = std::max(100.0 * w.r0, 1e4);
    SubsolutionReport rep = verify_subsolution(w, r_max, points);
    return rep.pass;
}

} // namespace

Witness example1_witness(double lambda, double s, double r0, double c0) {
    if (!(lambda > 3.0) || !(s < -lambda - 1.0) || !(r0 > 0.0))
        throw Error("example1_witness: requires lambda > 3, s < -lambda-1, r0 > 0");
    double a = -(4.0 + s) / (lambda - 3.0);
    Witness w;
    w.profile = power_profile(a, r0);
    w.r0 = r0;
    w.example = 1;
    w.spec = NonlinearitySpec{c0, lambda, s, 0.0, 0.0, 2.0, 2.0, 1.0};
    w.formula = "r^(" + format_g17(a) + ") - r0^(" + format_g17(a) + ")";
    return w;
}

Witness example2_witness(double lambda, double mu, double r0, double c0) {
    if (!(lambda > 3.0) || !(mu < -1.0))
        throw Error("example2_witness: requires lambda > 3, mu < -1");
    if (!(r0 > 1.0)) r0 = 1.5; // ln r0 must be positive
    double m = -(mu + 1.0) / (lambda - 3.0);
    Witness w;
    w.r0 = r0;
    w.example = 2;
    w.spec = NonlinearitySpec{c0, lambda, -lambda - 1.0, mu, 0.0, 2.0, 2.0, 1.0};
    w.formula = "r ln^(" + format_g17(m) + ") r - r0 ln^(" + format_g17(m) + ") r0";
    for (int j = 0; j < 200; ++j) {
        w.r0 = r0 * std::pow(2.0, j / 4.0);
        w.profile = loglinear_profile(m, w.r0);
        if (probe(w)) return w;
    }
    throw Error("example2_witness: no admissible cutoff found by the upward search");
}

Witness example3_witness(double nu, double s, double r0, double c0) {
    if (!(nu > 4.0) || !(s < -4.0))
        throw Error("example3_witness: requires nu > 4, s < -4");
    if (!(r0 > 0.0)) r0 = 1.0;
    double b = (4.0 + s) / (4.0 - nu);
    Witness w;
    w.r0 = r0;
    w.example = 3;
    w.spec = NonlinearitySpec{c0, 3.0, s, 0.0, nu, 2.0, 2.0, 1.0};
    w.formula = "exp(r^(" + format_g17(b) + ")) - exp(r0^(" + format_g17(b) + "))";
    for (int j = 0; j < 200; ++j) {
        w.r0 = r0 * std::pow(2.0, j / 4.0);
        w.profile = stretched_exp_profile(b, w.r0);
        if (probe(w)) return w;
    }
    throw Error("example3_witness: no admissible cutoff found by the upward search");
}

SubsolutionReport verify_subsolution(const Witness& w, double r_max,
                                     int grid_points, bool keep_rows) {
    if (!(r_max > w.r0)) throw Error("verify_subsolution: r_max must exceed r0");
    SubsolutionReport rep;
    rep.pass = true;
    double lr0 = std::log(w.r0), lrm = std::log(r_max);
    for (int i = 1; i <= grid_points; ++i) {
        double r = std::exp(lr0 + (lrm - lr0) * i / grid_points);
        double lhs = infinity_laplacian_radial(w.profile, r);
        double u = std::max(0.0, w.profile.value(r));
        double rhs = family_rhs(w.spec, r, u);
        double ratio;
        if (lhs > 0.0) {
            ratio = rhs / lhs;
        } else {
            ratio = (rhs <= 0.0) ? 0.0 : kInf;
        }
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.argmax_r = r;
        }
        if (!(ratio <= 1.0)) {
            rep.pass = false;
            ++rep.violations;
        }
        if (i == grid_points) rep.ratio_at_rmax = ratio;
        if (keep_rows) rep.rows.push_back({r, lhs, rhs, ratio});
    }
    rep.max_admissible_c0 =
        rep.max_ratio > 0.0 ? w.spec.c0 / rep.max_ratio : kInf;
    return rep;
}

void subsolution_csv(std::ostream& os, const SubsolutionReport& rep) {
    os << "r,lhs,rhs,ratio\n";
    for (const auto& row : rep.rows)
        os << format_g17(row[0]) << ',' << format_g17(row[1]) << ','
           << format_g17(row[2]) << ',' << format_g17(row[3]) << '\n';
}

} // namespace blowup
