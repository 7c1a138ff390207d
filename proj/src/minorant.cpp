#include "blowup/minorant.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "blowup/common.hpp"
#include "blowup/criteria.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/radial.hpp"

namespace blowup {

double window_inf(const ScalarFn& H, double mu, double t, int samples) {
    if (!(mu > 1.0)) throw Error("window_inf: mu must exceed 1");
    if (samples < 8) samples = 8;
    double lo = std::max(t / mu, H.lo());
    double hi = std::min(t * mu, H.hi());
    if (!(lo < hi)) throw DomainError("window_inf: window misses the domain of H", t);
    double ulo = std::log(lo), uhi = std::log(hi);
    double best = std::numeric_limits<double>::infinity();
    double ubest = ulo;
    for (int i = 0; i < samples; ++i) {
        // Interior points only: the window is open.
        double u = ulo + (uhi - ulo) * (i + 0.5) / samples;
        double v = H(std::exp(u));
        if (v < best) {
            best = v;
            ubest = u;
        }
    }
    // One refinement pass: bisection-style shrink around the best sample.
    double step = (uhi - ulo) / samples;
    double a = ubest - step, b = ubest + step;
    for (int it = 0; it < 40; ++it) {
        double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
        double t1 = std::exp(m1), t2 = std::exp(m2);
        double v1 = (t1 > lo && t1 < hi) ? H(t1) : std::numeric_limits<double>::infinity();
        double v2 = (t2 > lo && t2 < hi) ? H(t2) : std::numeric_limits<double>::infinity();
        best = std::min({best, v1, v2});
        if (v1 < v2) b = m2; else a = m1;
    }
    return best;
}

namespace {

/// Sliding-window minimum of v over index windows (j - w, j + w), exclusive.
std::vector<double> sliding_min(const std::vector<double>& v, int w) {
    int n = static_cast<int>(v.size());
    std::vector<double> out(n);
    std::deque<int> dq; // indices with increasing values
    int right = 0;
    for (int j = 0; j < n; ++j) {
        int lo = std::max(0, j - w + 1);
        int hi = std::min(n - 1, j + w - 1);
        while (right <= hi) {
            while (!dq.empty() && v[dq.back()] >= v[right]) dq.pop_back();
            dq.push_back(right);
            ++right;
        }
        while (dq.front() < lo) dq.pop_front();
        out[j] = v[dq.front()];
    }
    return out;
}

double log_simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    double ua = std::log(a), ub = std::log(b);
    double du = (ub - ua) / (2 * panels);
    auto G = [&](double u) {
        double t = std::exp(u);
        return f(t) * t;
    };
    double sum = G(ua) + G(ub);
    for (int j = 1; j < 2 * panels; ++j) sum += G(ua + j * du) * (j % 2 ? 4.0 : 2.0);
    return sum * du / 3.0;
}

} // namespace

MinorantResult build_minorant(const ScalarFn& H, double mu, double t_max,
                              int grid_per_window) {
    if (!(mu > 1.0)) throw Error("build_minorant: mu must exceed 1");
    if (!(t_max > 1.0)) throw Error("build_minorant: t_max must exceed 1");
    const double lnmu = std::log(mu);
    const int K = std::max(2, static_cast<int>(std::ceil(4.0 * std::log(t_max) / lnmu)));
    const int G = std::max(8, grid_per_window / 8); // points per quarter-window

    // Master log grid covering (t_0/mu, t_{K+1}*mu): index of mu^(m/4) is (m+4)*G.
    const double du = lnmu / (4.0 * G);
    const double u0 = -lnmu;
    const int M = (K + 9) * G + 1;
    std::vector<double> Hval(M);
    for (int j = 0; j < M; ++j) {
        double t = std::exp(u0 + j * du);
        double v = H(t);
        if (!(v > 0.0))
            throw PositivityError("build_minorant: H must be positive", t, v);
        Hval[j] = v;
    }
    // eta_j = inf of H over (t_j/mu, t_j*mu): 4G grid steps to each side.
    std::vector<double> eta = sliding_min(Hval, 4 * G);

    auto gamma_at = [&](int k, int stride) {
        // sup of eta over (t_{k-1}, t_{k+1}), sampled every `stride` grid points
        int jlo = (k + 3) * G + 1, jhi = (k + 5) * G - 1;
        double g = 0.0;
        for (int j = jlo; j <= jhi; j += stride) g = std::max(g, eta[j]);
        return g;
    };

    MinorantResult res;
    res.mu_ = mu;
    res.eta_u0_ = u0;
    res.eta_du_ = du;
    res.eta_ = eta;

    double grid_delta = 0.0;
    std::vector<PiecewiseLinear> levels;
    levels.reserve(K);
    double gamma1 = gamma_at(1, 1);
    levels.emplace_back(std::vector<PiecewiseLinear::Knot>{
        {1.0, gamma1}, {std::pow(mu, 0.25), gamma1}});
    grid_delta = std::abs(gamma_at(1, 2) - gamma1) / gamma1;

    for (int k = 2; k <= K; ++k) {
        const PiecewiseLinear& prev = levels.back();
        double tk = std::pow(mu, k / 4.0);
        double gk = gamma_at(k, 1);
        grid_delta = std::max(grid_delta, std::abs(gamma_at(k, 2) - gk) / gk);
        double end = prev.back_y();
        PiecewiseLinear next;
        if (mu * end >= gk) {
            next = prev.min_with_constant(gk);
            next.append(tk, std::min(gk, end));
        } else {
            next = prev;
            next.append(tk, mu * end);
        }
        levels.push_back(std::move(next));
    }
    res.levels_ = std::move(levels);
    res.diag_.levels = K;
    res.diag_.t_top = std::pow(mu, K / 4.0);
    res.diag_.truncated = true; // the full construction is infinite; ours stops at t_K
    res.diag_.grid_delta = grid_delta;
    res.diag_.integral_bound = std::sqrt(mu) / (1.0 - std::pow(mu, -1.0 / 16.0));

    // inf of H over (t, 1], tabulated by a cumulative minimum from the right.
    {
        const int nb = 1024;
        double xlo = std::max(H.lo() * (1 + 1e-12), 1e-8);
        if (xlo >= 1.0) xlo = 0.5;
        std::vector<double> xs(nb), inf_right(nb);
        for (int i = 0; i < nb; ++i)
            xs[i] = std::exp(std::log(xlo) + (std::log(1.0) - std::log(xlo)) * i / (nb - 1.0));
        double run = H(1.0);
        for (int i = nb - 1; i >= 0; --i) {
            run = std::min(run, H(xs[i]));
            inf_right[i] = run;
        }
        res.below_x_ = std::move(xs);
        res.below_inf_ = std::move(inf_right);
    }

    // Diagnostics: tail test on eta and the pre-mollification integral ratio.
    {
        // reuse the master eta grid; beyond its top, extend by the log-log
        // slope of the final decade so the tail test sees the growth rate
        const std::vector<double>& ev = res.eta_;
        std::size_t n = ev.size();
        std::size_t tail = std::max<std::size_t>(2, n / 10);
        double top = std::max(ev[n - 1], 1e-300);
        double slope = (std::log(top) - std::log(std::max(ev[n - 1 - tail], 1e-300))) /
                       (tail * res.eta_du_);
        double u_end = res.eta_u0_ + (n - 1) * res.eta_du_;
        ScalarFn eta_fn = ScalarFn::from_callable(
            [&res, slope, u_end, top](double t) {
                double u = std::log(t);
                if (u <= u_end) return std::max(res.eta(t), 1e-300);
                return top * std::exp(slope * (u - u_end));
            },
            "eta", 0.0, std::numeric_limits<double>::infinity(), true);
        ConvergenceVerdict cv = check_g_condition(eta_fn);
        res.diag_.eta_convergence_warning = cv.status != Convergence::Converges;
    }
    double T = res.diag_.t_top;
    res.diag_.integral_pre = log_simpson(
        [&res](double t) { return std::pow(res.htilde(t) * t, -0.25); }, 1.0, T, 2048);
    res.diag_.integral_eta = log_simpson(
        [&res](double t) { return std::pow(res.eta(t) * t, -0.25); }, 1.0, T, 2048);

    double hmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 24; ++i) {
        double t = std::exp(std::log(0.05) * (1.0 - i / 23.0));
        hmin = std::min(hmin, res.h(t));
    }
    res.diag_.h_min_01 = hmin;
    return res;
}

const PiecewiseLinear& MinorantResult::level(int k) const {
    if (k < 1 || k > static_cast<int>(levels_.size()))
        throw Error("MinorantResult::level: index out of range");
    return levels_[k - 1];
}

double MinorantResult::t_k(int k) const { return std::pow(mu_, k / 4.0); }

double MinorantResult::eta(double t) const {
    double u = std::log(t);
    double j = (u - eta_u0_) / eta_du_;
    if (j <= 0.0) return eta_.front();
    if (j >= eta_.size() - 1.0) return eta_.back();
    std::size_t i = static_cast<std::size_t>(j);
    double w = j - i;
    return eta_[i] + w * (eta_[i + 1] - eta_[i]);
}

double MinorantResult::htilde(double t) const {
    if (t <= 0.0) return 0.0;
    const PiecewiseLinear& top = levels_.back();
    if (t >= 1.0) return top(t); // clamps to the last level value beyond t_top
    double h1 = top(1.0);
    // inf of H over (t, 1] from the cumulative table
    auto it = std::upper_bound(below_x_.begin(), below_x_.end(), t);
    double inf_h = (it == below_x_.end())
                       ? below_inf_.back()
                       : below_inf_[static_cast<std::size_t>(it - below_x_.begin())];
    return std::min(h1, inf_h);
}

double MinorantResult::h(double t) const {
    static const BumpKernel w(0.5);
    // the shifted integrand vanishes for tau <= 1/2; clip so the quadrature
    // never sees an all-zero initial stencil
    double a = std::max(t - 0.5, 0.5), b = t + 0.5;
    if (!(a < b)) return 0.0;
    double scale = std::max(1.0, htilde(t));
    return adaptive_simpson(
        [this, t](double tau) { return w(t - tau) * htilde(tau - 0.5); },
        a, b, 1e-10 * scale);
}

ScalarFn MinorantResult::tabulated(double t_lo, double t_hi, int points) const {
    if (!(t_lo > 0.0 && t_hi > t_lo)) throw Error("tabulated: bad range");
    std::vector<double> lx(points), ly(points);
    for (int i = 0; i < points; ++i) {
        double u = std::log(t_lo) + (std::log(t_hi) - std::log(t_lo)) * i / (points - 1.0);
        double v = h(std::exp(u));
        lx[i] = u;
        ly[i] = std::log(std::max(v, 1e-300));
    }
    return ScalarFn::from_callable(
        [lx = std::move(lx), ly = std::move(ly)](double t) {
            double u = std::log(t);
            auto it = std::upper_bound(lx.begin(), lx.end(), u);
            std::size_t i = static_cast<std::size_t>(it - lx.begin());
            if (i == 0) i = 1;
            if (i == lx.size()) i = lx.size() - 1;
            double w = (u - lx[i - 1]) / (lx[i] - lx[i - 1]);
            return std::exp(ly[i - 1] + w * (ly[i] - ly[i - 1]));
        },
        "tabulated minorant", t_lo * (1 - 1e-12), t_hi * (1 + 1e-12), true);
}

std::string MinorantReport::summary() const {
    std::string s;
    s += std::string("minorant ") + (minorant_ok ? "pass" : "FAIL");
    s += std::string(", monotone ") + (monotone_ok ? "pass" : "FAIL");
    s += std::string(", doubling ") + (doubling_ok ? "pass" : "FAIL") +
         " (beta = " + format_g17(beta_empirical) + ")";
    s += std::string(", integral ") + (integral_ok ? "pass" : "FAIL") +
         " (ratio " + format_g17(integral_ratio) + " vs bound " +
         format_g17(integral_bound) + ")";
    if (!notes.empty()) s += "; " + notes;
    return s;
}

MinorantReport verify_minorant(const MinorantResult& res, const ScalarFn& H,
                               double mu, double alpha,
                               const std::function<double(double)>& h_override) {
    MinorantReport rep;
    auto hv = [&](double t) { return h_override ? h_override(t) : res.h(t); };
    double T = res.diagnostics().t_top;

    rep.minorant_ok = true;
    {
        const int n = 320;
        double a = std::max(0.05, H.lo() * (1 + 1e-9) * mu), b = T;
        for (int i = 0; i < n; ++i) {
            double t = std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / (n - 1.0));
            double h = hv(t), Ht = H(t);
            if (h > Ht * (1 + 1e-6) + 1e-12) {
                rep.minorant_ok = false;
                rep.violation_at = t;
                rep.notes = "h exceeds H at t = " + format_g17(t) + " (h = " +
                            format_g17(h) + ", H = " + format_g17(Ht) + ")";
                break;
            }
        }
    }

    rep.monotone_ok = true;
    {
        const int n = 320;
        double a = 0.2, b = 2.0 * T;
        double prev = hv(a);
        for (int i = 1; i < n; ++i) {
            double t = std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / (n - 1.0));
            double h = hv(t);
            if (h < prev * (1 - 1e-9) - 1e-12) {
                rep.monotone_ok = false;
                if (rep.violation_at == 0.0) rep.violation_at = t;
                break;
            }
            prev = h;
        }
    }

    {
        const int n = 160;
        double a = 2.0, b = std::max(4.0, T / std::max(alpha, 1.0));
        double beta = 0.0;
        for (int i = 0; i < n; ++i) {
            double t = std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / (n - 1.0));
            double r = hv(alpha * t) / hv(t);
            beta = std::max(beta, r);
        }
        rep.beta_empirical = beta;
        rep.doubling_ok = std::isfinite(beta) && beta > 0.0;
    }

    {
        double I_h = log_simpson([&](double t) { return std::pow(hv(t) * t, -0.25); },
                                 1.0, T, 1024);
        double I_eta = log_simpson([&res](double t) { return std::pow(res.eta(t) * t, -0.25); },
                                   1.0, T, 1024);
        rep.integral_ratio = I_h / I_eta;
        rep.integral_bound = res.diagnostics().integral_bound;
        rep.integral_ok = rep.integral_ratio <= rep.integral_bound;
    }
    return rep;
}

} // namespace blowup
