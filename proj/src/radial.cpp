#include "blowup/radial.hpp"

#include <cmath>
#include <random>

#include "blowup/common.hpp"
#include "blowup/quadrature.hpp"

namespace blowup {

std::pair<double, double> numeric_derivatives(const ScalarFn& f, double r, double h0) {
    if (h0 <= 0.0) h0 = default_diff_step(r);
    if (!(r - 2 * h0 > f.lo() && r + 2 * h0 < f.hi()))
        throw DomainError("numeric_derivatives: stencil leaves the domain of " +
                          f.description(), r);
    auto d_pair = [&](double h) {
        double fp = f(r + h), fm = f(r - h), f0 = f(r);
        return std::pair<double, double>{(fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)};
    };
    auto [d1h, d2h] = d_pair(h0);
    auto [d1h2, d2h2] = d_pair(h0 / 2);
    // One Richardson level on the O(h^2) central formulas.
    return {(4 * d1h2 - d1h) / 3, (4 * d2h2 - d2h) / 3};
}

RadialProfile RadialProfile::closed_form(ScalarFn phi, ScalarFn d1, ScalarFn d2) {
    RadialProfile p;
    p.phi_ = std::move(phi);
    p.d1_ = std::move(d1);
    p.d2_ = std::move(d2);
    return p;
}

RadialProfile RadialProfile::numeric(ScalarFn phi, double h0) {
    RadialProfile p;
    p.phi_ = std::move(phi);
    p.h0_ = h0;
    return p;
}

double RadialProfile::value(double r) const { return phi_(r); }

double RadialProfile::d1(double r) const {
    if (d1_) return (*d1_)(r);
    return numeric_derivatives(phi_, r, h0_).first;
}

double RadialProfile::d2(double r) const {
    if (d2_) return (*d2_)(r);
    return numeric_derivatives(phi_, r, h0_).second;
}

void RadialProfile::validate_derivatives(double a, double b, int n, double tol) const {
    if (!d1_ || !d2_) return;
    std::mt19937 rng(20240915u);
    std::uniform_real_distribution<double> U(a, b);
    for (int i = 0; i < n; ++i) {
        double r = U(rng);
        auto [nd1, nd2] = numeric_derivatives(phi_, r, 0.0);
        double a1 = (*d1_)(r), a2 = (*d2_)(r);
        double e1 = std::abs(nd1 - a1) / std::max(1.0, std::abs(a1));
        double e2 = std::abs(nd2 - a2) / std::max(1.0, std::abs(a2));
        // Second differences of doubles carry ~h^-2 rounding noise, so the
        // stated tolerance only binds the first derivative tightly.
        if (e1 > tol || e2 > std::max(tol, 1e-4))
            throw Error("RadialProfile: closed-form derivative disagrees with central "
                        "difference at r = " + format_g17(r));
    }
}

double infinity_laplacian_radial(const RadialProfile& p, double r) {
    double d1 = p.d1(r);
    return p.d2(r) * d1 * d1;
}

namespace {

double bump_raw(double t) {
    if (!(std::abs(t) < 1.0)) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

double bump_norm() {
    // integral of exp(-1/(1-t^2)) over (-1, 1); computed once.
    static const double m = adaptive_simpson([](double t) { return bump_raw(t); },
                                             -1.0, 1.0, 1e-13);
    return m;
}

} // namespace

BumpKernel::BumpKernel(double delta) : delta_(delta) {
    if (!(delta > 0.0)) throw Error("BumpKernel: delta must be positive");
    bump_norm();
}

double BumpKernel::operator()(double t) const {
    return bump_raw(t / delta_) / (bump_norm() * delta_);
}

double BumpKernel::mass_defect() const {
    double m = adaptive_simpson([this](double t) { return (*this)(t); },
                                -delta_, delta_, 1e-12);
    return std::abs(m - 1.0);
}

double mollify(const ScalarFn& f, double delta, double t) {
    BumpKernel w(delta);
    double v = adaptive_simpson(
        [&](double tau) { return w(t - tau) * f.extended(tau); },
        t - delta, t + delta, 1e-9);
    return v;
}

} // namespace blowup
