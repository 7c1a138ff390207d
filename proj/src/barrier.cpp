#include "blowup/barrier.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "blowup/common.hpp"
#include "blowup/minorant.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/radial.hpp"

namespace blowup {

namespace {

/// sup of f over the open log interval (lo, hi) by sampling plus a short
/// golden-section style refinement around the best sample.
double grid_sup(const std::function<double(double)>& f, double lo, double hi,
                int samples) {
    double ulo = std::log(lo), uhi = std::log(hi);
    double best = -std::numeric_limits<double>::infinity(), ubest = ulo;
    for (int i = 0; i < samples; ++i) {
        double u = ulo + (uhi - ulo) * (i + 0.5) / samples;
        double v = f(std::exp(u));
        if (v > best) {
            best = v;
            ubest = u;
        }
    }
    double step = (uhi - ulo) / samples;
    double a = std::max(ulo, ubest - step), b = std::min(uhi, ubest + step);
    for (int it = 0; it < 20; ++it) {
        double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
        double v1 = f(std::exp(m1)), v2 = f(std::exp(m2));
        best = std::max({best, v1, v2});
        if (v1 > v2) b = m2; else a = m1;
    }
    return best;
}

} // namespace

PFunction PFunction::construct(const ScalarFn& q, double sigma, double delta,
                               double R_star, double r_star, double r_table_end) {
    if (!(sigma > 1.0)) throw Error("construct_p: sigma must exceed 1");
    if (!(delta > 0.0)) throw Error("construct_p: delta must be positive");
    if (!(R_star > r_star)) throw Error("construct_p: R_star must exceed r_star");
    double feasible = 1.0 / (std::pow(sigma, 0.25) - 1.0);
    if (!(R_star > feasible))
        throw Error("construct_p: R_star must exceed 1/(sigma^(1/4)-1) = " +
                    format_g17(feasible));

    PFunction p;
    p.sigma_ = sigma;
    p.delta_ = delta;
    p.R_star_ = R_star;
    p.r_star_ = r_star;
    p.desc_ = "step-2 coefficient from q = " + q.description();

    double s4 = std::pow(sigma, 0.25);
    p.Q_ = [q, s4, r_star](double rho) {
        double lo = std::max(rho / s4, r_star * (1 + 1e-12));
        double hi = rho * s4;
        if (!(lo < hi)) return 0.0;
        return grid_sup([&q](double x) { return q(x); }, lo, hi, 32);
    };

    p.ramp_value_ = p.M_delta(R_star + 1.0);
    if (!(p.ramp_value_ > 0.0)) {
        double step = std::max(delta, 0.25);
        for (int k = 1; k <= 4096; ++k) {
            double r = R_star + 1.0 + k * step;
            if (p.M_delta(r) > 0.0)
                throw ShiftRStar("construct_p: M_delta vanishes at R_star + 1; "
                                 "nearest positive mass at r = " + format_g17(r),
                                 r - 1.0);
        }
        throw ShiftRStar("construct_p: M_delta vanishes everywhere sampled "
                         "(q has no positive mass)",
                         std::numeric_limits<double>::quiet_NaN());
    }

    // Tabulate M_delta: fine uniform nodes through the ramp neighborhood,
    // then geometric spacing; interpolation is linear in (ln r, ln p).
    double r0 = R_star + 1.0, r1 = R_star + 8.0;
    double step = std::min(1.0 / 16.0, std::max(delta / 8.0, 1e-3));
    for (double r = r0; r < r1; r += step) {
        p.tab_lnr_.push_back(std::log(r));
        p.tab_lnp_.push_back(std::log(std::max(p.M_delta(r), 1e-300)));
    }
    for (double r = r1; r <= r_table_end; r *= 1.01) {
        p.tab_lnr_.push_back(std::log(r));
        p.tab_lnp_.push_back(std::log(std::max(p.M_delta(r), 1e-300)));
    }
    return p;
}

PFunction PFunction::test_mode(std::function<double(double)> f, std::string desc) {
    if (!f) throw Error("PFunction::test_mode: null callable");
    PFunction p;
    p.test_mode_ = true;
    p.raw_ = std::move(f);
    p.desc_ = std::move(desc);
    return p;
}

double PFunction::M_delta(double r) const {
    if (test_mode_) throw Error("PFunction: M_delta is undefined in test mode");
    BumpKernel w(delta_);
    double qd = composite_simpson(
        [&](double tau) { return w(r - tau) * (tau > 0.0 ? Q_(tau) : 0.0); },
        r - delta_, r + delta_, 32);
    return std::min(qd, 1.0 / r);
}

double PFunction::operator()(double r) const {
    if (test_mode_) return raw_(r);
    if (r <= R_star_) return 0.0;
    if (r <= R_star_ + 1.0)
        return std::exp(-1.0 / (r - R_star_) + 1.0) * ramp_value_;
    double u = std::log(r);
    const auto& X = tab_lnr_;
    auto it = std::upper_bound(X.begin(), X.end(), u);
    std::size_t i = static_cast<std::size_t>(it - X.begin());
    if (i == 0) i = 1;
    if (i >= X.size()) i = X.size() - 1; // extrapolate with the last segment
    double t = (u - X[i - 1]) / (X[i] - X[i - 1]);
    double lnp = tab_lnp_[i - 1] + t * (tab_lnp_[i] - tab_lnp_[i - 1]);
    return std::min(std::exp(lnp), 1.0 / r);
}

double BarrierSolution::w_at(double radius) const {
    if (r.empty()) throw Error("BarrierSolution: empty trajectory");
    if (radius < r.front() - 1e-12 || radius > r.back() + 1e-12)
        throw Error("BarrierSolution: sample radius " + format_g17(radius) +
                    " outside trajectory range [" + format_g17(r.front()) + ", " +
                    format_g17(r.back()) + "]");
    auto it = std::upper_bound(r.begin(), r.end(), radius);
    std::size_t i = static_cast<std::size_t>(it - r.begin());
    if (i == 0) return w.front();
    if (i >= r.size()) return w.back();
    double a = r[i - 1], b = r[i], H = b - a;
    double t = (radius - a) / H;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return h00 * w[i - 1] + h10 * H * dw[i - 1] + h01 * w[i] + h11 * H * dw[i];
}

double BarrierSolution::dw_at(double radius) const {
    if (r.empty()) throw Error("BarrierSolution: empty trajectory");
    auto it = std::upper_bound(r.begin(), r.end(), radius);
    std::size_t i = static_cast<std::size_t>(it - r.begin());
    if (i == 0) return dw.front();
    if (i >= r.size()) return dw.back();
    double t = (radius - r[i - 1]) / (r[i] - r[i - 1]);
    return dw[i - 1] + t * (dw[i] - dw[i - 1]);
}

namespace {

struct Rhs {
    const PFunction& p;
    const ScalarFn& h;
    double inner_floor;
    long* evals;

    double h_clamped(double arg) const {
        double lo = h.lo(), hi = h.hi();
        if (std::isfinite(hi)) {
            double span = hi - (std::isfinite(lo) ? lo : 0.0);
            if (arg >= hi) arg = hi - span * 1e-12;
        } else if (arg > 1e120) {
            arg = 1e120;
        }
        if (std::isfinite(lo) && arg <= lo)
            arg = std::isfinite(hi) ? lo + (hi - lo) * 1e-12 : lo * (1 + 1e-12) + 1e-300;
        return h(arg);
    }

    // dy/dr; evaluates h only where p is positive so the pipeline never
    // sees the huge arguments w/xi of the dead zone xi <= R_star
    double dy(double r, double w) const {
        ++*evals;
        double pv = p(r);
        if (pv == 0.0) return 0.0;
        double denom = std::max(r, inner_floor);
        double arg = denom > 0.0 ? w / denom : std::numeric_limits<double>::infinity();
        return 1.5 * pv * h_clamped(arg);
    }
};

double cbrt_pos(double y) { return y > 0.0 ? std::cbrt(y) : 0.0; }

} // namespace

BarrierSolution integrate_ode(const PFunction& p, const ScalarFn& h,
                              double epsilon, double w_cap, SolveOptions opts) {
    if (!(epsilon > 0.0)) throw Error("integrate_ode: epsilon must be positive");
    if (!(w_cap > epsilon)) throw Error("integrate_ode: w_cap must exceed epsilon");

    BarrierSolution sol;
    sol.epsilon = epsilon;
    Rhs rhs{p, h, opts.inner_floor, &sol.stats.rhs_evals};

    // Dormand-Prince 5(4) coefficients
    static const double A[6][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656}};
    static const double C[6] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0};
    static const double B5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0};
    static const double B4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    double r = 0.0, w = epsilon, y = 0.0;
    if (!p.is_test_mode()) {
        // exact dead zone: w = epsilon on [0, R_star]
        sol.r = {0.0};
        sol.w = {epsilon};
        sol.dw = {0.0};
        r = p.R_star();
    }
    sol.r.push_back(r);
    sol.w.push_back(w);
    sol.dw.push_back(cbrt_pos(y));

    double dr = std::min(opts.max_step_abs, 1e-3);
    sol.stats.min_step = dr;
    double kw[7], ky[7];
    kw[0] = cbrt_pos(y);
    ky[0] = rhs.dy(r, w);

    const long max_steps = 20'000'000;
    while (r < opts.r_end) {
        dr = std::min({dr, std::max(opts.max_step_abs, opts.max_step_rel * r),
                       opts.r_end - r});
        for (int s = 1; s < 6; ++s) {
            double ws = w, ys = y;
            for (int j = 0; j < s; ++j) {
                ws += dr * A[s][j] * kw[j];
                ys += dr * A[s][j] * ky[j];
            }
            kw[s] = cbrt_pos(ys);
            ky[s] = rhs.dy(r + C[s] * dr, ws);
        }
        double w5 = w, y5 = y, w4 = w, y4 = y;
        for (int s = 0; s < 6; ++s) {
            w5 += dr * B5[s] * kw[s];
            y5 += dr * B5[s] * ky[s];
            w4 += dr * B4[s] * kw[s];
            y4 += dr * B4[s] * ky[s];
        }
        kw[6] = cbrt_pos(y5);
        ky[6] = rhs.dy(r + dr, w5);
        w4 += dr * B4[6] * kw[6];
        y4 += dr * B4[6] * ky[6];

        double ew = (w5 - w4) / (opts.atol + opts.rtol * std::max(std::abs(w), std::abs(w5)));
        double ey = (y5 - y4) / (opts.atol + opts.rtol * std::max(std::abs(y), std::abs(y5)));
        double err = std::sqrt(0.5 * (ew * ew + ey * ey));

        if (w5 >= w_cap && dr > opts.collapse_step * std::max(1.0, r) &&
            dr > 1e-14 * std::max(1.0, r)) {
            // localize the cap crossing: shrink the step until the breach
            // happens within a negligible radius interval
            ++sol.stats.rejected;
            dr *= 0.25;
            if (sol.stats.steps + sol.stats.rejected > max_steps)
                throw SolverError("integrate_ode: step budget exhausted at r = " +
                                  format_g17(r));
            continue;
        }
        if (err <= 1.0 || dr <= 1e-14 * std::max(1.0, r)) {
            r += dr;
            w = w5;
            y = y5;
            kw[0] = kw[6];
            ky[0] = ky[6];
            sol.r.push_back(r);
            sol.w.push_back(w);
            sol.dw.push_back(cbrt_pos(y));
            ++sol.stats.steps;
            sol.stats.min_step = std::min(sol.stats.min_step, dr);
            if (w >= w_cap) {
                if (dr <= opts.collapse_step * std::max(1.0, r)) {
                    sol.status = SolveStatus::BlowUp;
                    sol.r_end = r;
                    sol.R_max_lo = r;
                    // power-law extrapolation of the remainder from the
                    // logarithmic growth rates at the last two samples
                    std::size_t n = sol.r.size();
                    double g2 = sol.dw[n - 1] / sol.w[n - 1];
                    double g1 = sol.dw[n - 2] / sol.w[n - 2];
                    double hi = r * (1 + 1e-9);
                    if (g2 > g1 && g1 > 0.0) {
                        double k = (sol.r[n - 1] - sol.r[n - 2]) / (1.0 / g1 - 1.0 / g2);
                        if (k > 0.0) hi = std::max(hi, sol.r[n - 1] + k / g2);
                    }
                    sol.R_max_hi = hi;
                    return sol;
                }
                throw SolverError("integrate_ode: w reached the cap " +
                                  format_g17(w_cap) + " at r = " + format_g17(r) +
                                  " while steps remained large (no blow-up signature)");
            }
            if (dr <= 1e-14 * std::max(1.0, r))
                throw SolverError("integrate_ode: step underflow at r = " +
                                  format_g17(r) + " without cap breach");
            dr *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.5, 5.0);
        } else {
            ++sol.stats.rejected;
            dr *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
        if (sol.stats.steps + sol.stats.rejected > max_steps)
            throw SolverError("integrate_ode: step budget exhausted at r = " +
                              format_g17(r));
    }
    sol.status = SolveStatus::Completed;
    sol.r_end = r;
    return sol;
}

BarrierSolution solve_picard(const PFunction& p, const ScalarFn& h,
                             double epsilon, double r_end, PicardOptions opts) {
    if (!(epsilon > 0.0)) throw Error("solve_picard: epsilon must be positive");
    if (!(r_end > 0.0)) throw Error("solve_picard: r_end must be positive");

    // composite grid: uniform cells, geometric coarsening far out
    std::vector<double> x{0.0};
    while (x.back() < r_end) {
        double xi = x.back();
        double step = (xi < opts.dense_until) ? opts.dense_step
                                              : std::max(opts.dense_step, opts.far_ratio * xi);
        x.push_back(std::min(xi + step, r_end));
    }
    const std::size_t n = x.size();

    BarrierSolution sol;
    sol.epsilon = epsilon;
    long evals = 0;
    Rhs rhs{p, h, opts.inner_floor, &evals};

    std::vector<double> w(n, epsilon), W(n), I(n), F(n), S(n, 0.0);
    auto w_interp = [&](std::size_t j, double xi) {
        // cubic Hermite within cell [x[j], x[j+1]], slopes from the
        // previous sweep; linear interpolation loses an order here
        // because the integrand reacts like the fourth power of w
        double d = x[j + 1] - x[j];
        double t = (xi - x[j]) / d;
        double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * w[j] + (t3 - 2 * t2 + t) * d * S[j] +
               (-2 * t3 + 3 * t2) * w[j + 1] + (t3 - t2) * d * S[j + 1];
    };

    int iter = 0;
    double change = std::numeric_limits<double>::infinity();
    bool capped = false;
    double cap_radius = 0.0;
    for (; iter < opts.max_iterations; ++iter) {
        W[0] = epsilon;
        I[0] = 0.0;
        F[0] = 0.0;
        double f_a = rhs.dy(x[0], w[0]);
        capped = false;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            double a = x[j], b = x[j + 1], d = b - a;
            double q1 = a + 0.25 * d, m = a + 0.5 * d, q3 = a + 0.75 * d;
            double f_q1 = rhs.dy(q1, w_interp(j, q1));
            double f_m = rhs.dy(m, w_interp(j, m));
            double f_q3 = rhs.dy(q3, w_interp(j, q3));
            double f_b = rhs.dy(b, w[j + 1]);
            double I_m = I[j] + (d / 12.0) * (f_a + 4.0 * f_q1 + f_m);
            double I_b = I_m + (d / 12.0) * (f_m + 4.0 * f_q3 + f_b);
            double F_m = cbrt_pos(I_m), F_b = cbrt_pos(I_b);
            if (I_b > 8.0 * std::max(I[j], 0.0) && I_b > 0.0) {
                // the cube root is singular where I leaves zero, which
                // wrecks Simpson's order; integrate the piecewise linear
                // model of I exactly instead
                auto seg = [d](double u, double v) {
                    u = std::max(u, 0.0);
                    v = std::max(v, 0.0);
                    if (v <= u) return 0.5 * d * std::cbrt(u);
                    return 0.75 * (0.5 * d) *
                           (std::pow(v, 4.0 / 3.0) - std::pow(u, 4.0 / 3.0)) / (v - u);
                };
                W[j + 1] = W[j] + seg(I[j], I_m) + seg(I_m, I_b);
            } else {
                W[j + 1] = W[j] + (d / 6.0) * (F[j] + 4.0 * F_m + F_b);
            }
            I[j + 1] = I_b;
            F[j + 1] = F_b;
            f_a = f_b;
            if (W[j + 1] >= opts.w_cap) {
                capped = true;
                cap_radius = b;
                // freeze the tail so the divergence is reported, not iterated
                for (std::size_t t = j + 2; t < n; ++t) {
                    W[t] = W[j + 1];
                    I[t] = I[j + 1];
                    F[t] = F[j + 1];
                }
                break;
            }
        }
        change = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            change = std::max(change, std::abs(W[j] - w[j]) / std::max(1.0, std::abs(W[j])));
            w[j] = W[j];
            S[j] = F[j];
        }
        if (capped && change > opts.tol) continue;
        if (change <= opts.tol) break;
    }
    sol.stats.picard_iterations = iter + 1;
    sol.stats.rhs_evals = evals;
    sol.stats.residual = change;

    if (capped) {
        sol.status = SolveStatus::BlowUp;
        sol.R_max_lo = std::max(0.0, cap_radius - 2 * opts.dense_step);
        sol.R_max_hi = cap_radius;
        sol.r_end = cap_radius;
    } else {
        if (change > opts.tol)
            throw SolverError("solve_picard: no contraction after " +
                              std::to_string(opts.max_iterations) +
                              " iterations (sup change " + format_g17(change) + ")");
        sol.status = SolveStatus::Completed;
        sol.r_end = r_end;
    }
    sol.r = std::move(x);
    sol.w = std::move(w);
    sol.dw = std::move(F);
    return sol;
}

std::string Certificate::to_json() const {
    nlohmann::ordered_json j;
    j["spec"] = {{"c0", spec.c0},       {"lambda", spec.lambda},
                 {"s", spec.s},         {"mu_log", spec.mu_log},
                 {"nu_log", spec.nu_log}, {"sigma", spec.sigma},
                 {"theta", spec.theta}, {"r_star", spec.r_star}};
    j["epsilon"] = epsilon;
    j["R_star"] = R_star;
    j["delta"] = delta;
    j["R_max_bracket"] = {R_max_lo, R_max_hi};
    j["solver"] = {{"rtol", rtol}, {"atol", atol}, {"w_cap", w_cap}};
    j["conclusion"] = conclusion;
    j["library_version"] = kLibraryVersion;
    return j.dump(2) + "\n";
}

CertifyOutcome certify_nonexistence(const NonlinearitySpec& spec, double epsilon,
                                    double R_star, SolveOptions opts) {
    spec.validate();
    if (!(epsilon > 0.0)) throw Error("certify_nonexistence: epsilon must be positive");

    CertifyOutcome out;
    auto [q, g] = derive_q_g(spec);
    ConvergenceVerdict qc, gc;
    try {
        qc = check_q_condition(q, spec.r_star);
        gc = check_g_condition(g);
    } catch (const Error& e) {
        throw SolverError(std::string("certify (criteria stage): ") + e.what());
    }
    out.q_diverges = qc.status == Convergence::Diverges;
    out.g_converges = gc.status == Convergence::Converges;

    double mu = std::sqrt(spec.theta);
    ScalarFn H = ScalarFn::from_callable(
        [g, mu](double t) {
            return grid_sup([&g](double x) { return g(x); },
                            std::max(t / mu, 1e-300), t * mu, 48);
        },
        "window sup of " + g.description(), 0.0,
        std::numeric_limits<double>::infinity(), true);

    double t_top = 4.0 * opts.w_cap / R_star;
    MinorantResult minor;
    ScalarFn h;
    try {
        minor = build_minorant(H, mu, t_top, 256);
        h = minor.tabulated(std::min(0.5, epsilon / (4.0 * opts.r_end)), t_top, 2048);
    } catch (const Error& e) {
        throw SolverError(std::string("certify (minorant stage): ") + e.what());
    }

    double delta = (std::pow(spec.sigma, 0.125) - 1.0) * R_star / 4.0;
    PFunction p;
    try {
        p = PFunction::construct(q, spec.sigma, delta, R_star, spec.r_star,
                                 2.2 * opts.r_end);
    } catch (const ShiftRStar&) {
        throw;
    } catch (const Error& e) {
        throw SolverError(std::string("certify (barrier coefficient stage): ") + e.what());
    }

    try {
        out.solution = integrate_ode(p, h, epsilon, opts.w_cap, opts);
    } catch (const Error& e) {
        throw SolverError(std::string("certify (integration stage): ") + e.what());
    }

    if (out.solution.status == SolveStatus::BlowUp) {
        out.certified = true;
        Certificate& c = out.certificate;
        c.spec = spec;
        c.epsilon = epsilon;
        c.R_star = R_star;
        c.delta = delta;
        c.R_max_lo = out.solution.R_max_lo;
        c.R_max_hi = out.solution.R_max_hi;
        c.rtol = opts.rtol;
        c.atol = opts.atol;
        c.w_cap = opts.w_cap;
        c.conclusion =
            "barrier blows up at finite radius; any admissible solution u "
            "satisfies u <= " + format_g17(epsilon) + " on the ball of radius " +
            format_g17(R_star) + " intersected with the domain";
        out.report = "certificate: blow-up bracket [" + format_g17(c.R_max_lo) +
                     ", " + format_g17(c.R_max_hi) + "]";
    } else {
        out.report = "no certificate at desk scale: integration reached r = " +
                     format_g17(out.solution.r_end) + " with w = " +
                     format_g17(out.solution.w.back()) + " finite";
    }
    return out;
}

bool compare_barrier(const std::vector<std::pair<double, double>>& u_samples,
                     const BarrierSolution& sol, std::string* violation) {
    for (const auto& [radius, value] : u_samples) {
        double wv = sol.w_at(radius); // throws if outside the trajectory
        if (value > wv) {
            if (violation)
                *violation = "u = " + format_g17(value) + " exceeds w = " +
                             format_g17(wv) + " at r = " + format_g17(radius);
            return false;
        }
    }
    return true;
}

} // namespace blowup
