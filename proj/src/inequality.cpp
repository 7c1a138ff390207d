#include "blowup/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "blowup/common.hpp"
#include "blowup/quadrature.hpp"

namespace blowup {

namespace {

LemmaReport finish(int lemma, double lhs, double rhs) {
    LemmaReport rep;
    rep.lemma = lemma;
    rep.lhs = lhs;
    rep.rhs_core = rhs;
    if (lhs == 0.0 && rhs == 0.0) {
        rep.degenerate = true;
        rep.pass = true;
        rep.C_emp = 1.0;
        rep.note = "both sides vanish";
        return rep;
    }
    rep.C_emp = lhs / rhs;
    rep.pass = std::isfinite(rep.C_emp) && rep.C_emp > 0.0;
    return rep;
}

void check_alpha(double alpha, bool strict_upper) {
    if (!(alpha > 0.0) || (strict_upper ? !(alpha < 1.0) : !(alpha <= 1.0)))
        throw Error("lemma check: alpha outside its admissible range");
}

/// exact integral of c^-alpha t^(alpha-1) over [a, b]
double pow_weight_cell(double c, double alpha, double a, double b) {
    return std::pow(c, -alpha) * (std::pow(b, alpha) - std::pow(a, alpha)) / alpha;
}

} // namespace

LemmaReport lemma1_check(const ScalarFn& eta, const ScalarFn& H, double alpha,
                         double mu, double nu, double M1, double M2) {
    check_alpha(alpha, false);
    if (!(mu > 1.0) || !(M2 >= nu * M1) || !(M1 > 0.0) || !(M2 > M1))
        throw Error("lemma1_check: parameter preconditions violated");
    for (int i = 0; i < 64; ++i) {
        double t = M1 * std::pow(M2 / M1, (i + 0.5) / 64.0);
        double lo = std::max(t / mu, H.lo() * (1 + 1e-12));
        double hi = std::min(t * mu, H.hi());
        double inf_h = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 64; ++j)
            inf_h = std::min(inf_h, H(lo * std::pow(hi / lo, (j + 0.5) / 64.0)));
        if (eta(t) > inf_h * (1 + 1e-9))
            throw Error("lemma1_check: eta exceeds the window infimum of H at t = " +
                        format_g17(t));
    }
    double lhs_core = adaptive_simpson(
        [&](double t) { return std::pow(eta(t), -alpha) * std::pow(t, alpha - 1.0); },
        M1, M2, 1e-11);
    double rhs = adaptive_simpson([&](double t) { return 1.0 / H(t); }, M1, M2, 1e-11);
    return finish(1, std::pow(lhs_core, 1.0 / alpha), rhs);
}

LemmaReport lemma1_check(const PiecewiseConstant& eta, const PiecewiseConstant& H,
                         double alpha, double mu, double nu, double M1, double M2) {
    check_alpha(alpha, false);
    if (!(mu > 1.0) || !(M2 >= nu * M1) || !(M1 > 0.0) || !(M2 > M1))
        throw Error("lemma1_check: parameter preconditions violated");
    // exact cell sums over the breakpoints of eta restricted to [M1, M2]
    std::vector<double> cuts{M1, M2};
    for (double b : eta.breaks())
        if (b > M1 && b < M2) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double lhs_core = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double m = 0.5 * (cuts[i] + cuts[i + 1]);
        double ev = eta(m);
        if (ev > H.window_min(m / mu, m * mu, ev) * (1 + 1e-9))
            throw Error("lemma1_check: eta exceeds the window infimum of H at t = " +
                        format_g17(m));
        lhs_core += pow_weight_cell(ev, alpha, cuts[i], cuts[i + 1]);
    }
    std::vector<double> hcuts{M1, M2};
    for (double b : H.breaks())
        if (b > M1 && b < M2) hcuts.push_back(b);
    std::sort(hcuts.begin(), hcuts.end());
    double rhs = 0.0;
    for (std::size_t i = 0; i + 1 < hcuts.size(); ++i)
        rhs += (hcuts[i + 1] - hcuts[i]) / H(0.5 * (hcuts[i] + hcuts[i + 1]));
    return finish(1, std::pow(lhs_core, 1.0 / alpha), rhs);
}

LemmaReport lemma2_check(const ScalarFn& eta, double alpha, double r1, double r2) {
    check_alpha(alpha, false);
    if (!(r1 < r2) || r1 < 0.0) throw Error("lemma2_check: need 0 <= r1 < r2");
    auto P = [&](double rho) {
        return adaptive_simpson([&](double x) { return eta(x); }, r1, rho, 1e-11);
    };
    double lhs = adaptive_simpson([&](double rho) { return std::pow(P(rho), alpha); },
                                  r1, r2, 1e-9);
    double rhs = adaptive_simpson(
        [&](double xi) {
            return std::pow((1.0 - xi / r2) * xi * eta(xi), alpha);
        },
        r1, r2, 1e-9);
    return finish(2, lhs, rhs);
}

LemmaReport lemma2_check(const PiecewiseConstant& eta, double alpha, double r1, double r2) {
    check_alpha(alpha, false);
    if (!(r1 < r2) || r1 < 0.0) throw Error("lemma2_check: need 0 <= r1 < r2");
    std::vector<double> cuts{r1, r2};
    for (double b : eta.breaks())
        if (b > r1 && b < r2) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    // lhs: P(rho) is piecewise linear, (P)^alpha integrates in closed form
    double lhs = 0.0, P0 = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        double c = eta(0.5 * (a + b));
        double P1 = P0 + c * (b - a);
        if (c > 0.0)
            lhs += (std::pow(P1, alpha + 1.0) - std::pow(P0, alpha + 1.0)) / (c * (alpha + 1.0));
        else
            lhs += std::pow(P0, alpha) * (b - a);
        P0 = P1;
    }
    // rhs: smooth within each cell; fixed-panel Simpson per cell
    double rhs = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double c = eta(0.5 * (cuts[i] + cuts[i + 1]));
        if (c == 0.0) continue;
        rhs += composite_simpson(
            [&](double xi) { return std::pow((1.0 - xi / r2) * xi * c, alpha); },
            cuts[i], cuts[i + 1], 2048);
    }
    return finish(2, lhs, rhs);
}

LemmaReport lemma3_check(const ScalarFn& eta, double alpha, double r1, double r2) {
    check_alpha(alpha, true);
    if (!(r1 < r2) || r1 < 0.0) throw Error("lemma3_check: need 0 <= r1 < r2");
    // The integrand eta kappa^(alpha-1) has an integrable singularity where
    // kappa -> 0, so it is integrated in the kappa variable: on any cell
    // where eta > 0 the contribution is (kappa(a)^alpha - kappa(b)^alpha)/alpha,
    // exactly, and cells with eta = 0 contribute nothing (zero convention).
    const int n = 4096;
    std::vector<double> kap(n + 1, 0.0);
    for (int i = n; i-- > 0;) {
        double a = r1 + (r2 - r1) * i / n, b = r1 + (r2 - r1) * (i + 1) / n;
        kap[i] = kap[i + 1] + composite_simpson([&](double x) { return eta(x); }, a, b, 4);
    }
    double rhs = 0.0;
    for (int i = 0; i < n; ++i) {
        double m = r1 + (r2 - r1) * (i + 0.5) / n;
        if (eta(m) > 0.0 && kap[i] > 0.0)
            rhs += (std::pow(kap[i], alpha) - std::pow(kap[i + 1], alpha)) / alpha;
    }
    return finish(3, std::pow(kap[0], alpha), rhs);
}

LemmaReport lemma3_check(const PiecewiseConstant& eta, double alpha, double r1, double r2) {
    check_alpha(alpha, true);
    if (!(r1 < r2) || r1 < 0.0) throw Error("lemma3_check: need 0 <= r1 < r2");
    std::vector<double> cuts{r1, r2};
    for (double b : eta.breaks())
        if (b > r1 && b < r2) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += eta(0.5 * (cuts[i] + cuts[i + 1])) * (cuts[i + 1] - cuts[i]);
    // kappa at the right edge of each cell, accumulated from the right
    double rhs = 0.0, kap = 0.0;
    for (std::size_t i = cuts.size() - 1; i-- > 0;) {
        double a = cuts[i], b = cuts[i + 1];
        double c = eta(0.5 * (a + b));
        double kap_left = kap + c * (b - a);
        if (c > 0.0 && kap_left > 0.0) {
            // integral of c kappa^(alpha-1) over the cell = (kap_left^alpha - kap^alpha)/alpha
            rhs += (std::pow(kap_left, alpha) - std::pow(kap, alpha)) / alpha;
        }
        kap = kap_left;
    }
    return finish(3, std::pow(total, alpha), rhs);
}

namespace {

template <typename IntegralFn, typename PointFn>
LemmaReport lemma4_impl(IntegralFn I, PointFn pval, double gamma, double lambda,
                        double r_star, double r0, double r) {
    if (!(gamma > 0.0) || !(lambda > 1.0) || !(r0 > r_star) || !(r >= r0))
        throw Error("lemma4_check: parameter preconditions violated");
    for (int i = 0; i <= 64; ++i) {
        double x = r0 + (lambda * r - r0) * i / 64.0;
        double denom = I(r_star, x);
        if (denom <= 0.0 || x * pval(x) > gamma * denom * (1 + 1e-9))
            throw Error("lemma4_check: growth hypothesis fails at r = " + format_g17(x));
    }
    return finish(4, I(r_star, lambda * r), I(r_star, r));
}

} // namespace

LemmaReport lemma4_check(const ScalarFn& p, double gamma, double lambda,
                         double r_star, double r0, double r) {
    auto I = [&](double a, double b) {
        return adaptive_simpson([&](double x) { return p(x); }, a, b, 1e-11);
    };
    auto pv = [&](double x) { return p(x); };
    return lemma4_impl(I, pv, gamma, lambda, r_star, r0, r);
}

LemmaReport lemma4_check(const PiecewiseConstant& p, double gamma, double lambda,
                         double r_star, double r0, double r) {
    auto I = [&](double a, double b) { return p.integral(a, b); };
    auto pv = [&](double x) { return p(x); };
    return lemma4_impl(I, pv, gamma, lambda, r_star, r0, r);
}

namespace {

PiecewiseConstant random_pwc(std::mt19937_64& rng, double a, double b, int cells,
                             double lo_level, double hi_level) {
    std::uniform_real_distribution<double> U(std::log(lo_level), std::log(hi_level));
    std::vector<double> breaks(cells + 1), levels(cells);
    for (int i = 0; i <= cells; ++i) breaks[i] = a + (b - a) * i / cells;
    for (int i = 0; i < cells; ++i) levels[i] = std::exp(U(rng));
    return PiecewiseConstant(std::move(breaks), std::move(levels));
}

/// eta(t) = window min of H as an exact step function of t: the active set
/// of H-cells only changes when an edge of the window crosses an H break.
PiecewiseConstant exact_window_min(const PiecewiseConstant& H, double mu,
                                   double M1, double M2) {
    std::vector<double> cuts{M1, M2};
    for (double b : H.breaks()) {
        double c1 = b / mu, c2 = b * mu;
        if (c1 > M1 && c1 < M2) cuts.push_back(c1);
        if (c2 > M1 && c2 < M2) cuts.push_back(c2);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> levels(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double m = std::sqrt(cuts[i] * cuts[i + 1]);
        levels[i] = H.window_min(m / mu, m * mu, H(m));
    }
    return PiecewiseConstant(std::move(cuts), std::move(levels));
}

} // namespace

std::vector<BatteryRow> lemma_battery(int lemma, int count, std::uint64_t seed) {
    std::vector<BatteryRow> rows;
    rows.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::uint64_t item_seed = seed * 1000003ull + static_cast<std::uint64_t>(lemma) * 101ull + i;
        std::mt19937_64 rng(item_seed);
        std::uniform_real_distribution<double> Ua(0.2, 1.0);
        BatteryRow row;
        row.lemma = lemma;
        row.index = i;
        row.seed = item_seed;
        LemmaReport rep;
        switch (lemma) {
            case 1: {
                const double mu = 2.0, M1 = 1.0, M2 = std::exp(1.0);
                double alpha = Ua(rng);
                PiecewiseConstant H = random_pwc(rng, M1 / mu * 0.99, M2 * mu * 1.01,
                                                 32, 1e-2, 1e2);
                PiecewiseConstant eta = exact_window_min(H, mu, M1, M2);
                rep = lemma1_check(eta, H, alpha, mu, 2.0, M1, M2);
                row.alpha = alpha;
                row.param = mu;
                break;
            }
            case 2: {
                double alpha = Ua(rng);
                PiecewiseConstant eta = random_pwc(rng, 0.0, 1.0, 16, 1e-2, 1e2);
                rep = lemma2_check(eta, alpha, 0.0, 1.0);
                row.alpha = alpha;
                row.param = 1.0;
                break;
            }
            case 3: {
                std::uniform_real_distribution<double> Us(0.1, 0.9);
                double alpha = Us(rng);
                PiecewiseConstant eta = random_pwc(rng, 0.0, 1.0, 16, 1e-2, 1e2);
                rep = lemma3_check(eta, alpha, 0.0, 1.0);
                row.alpha = alpha;
                row.param = 1.0;
                break;
            }
            case 4: {
                const double gamma = 2.0, lambda = 2.0, r_star = 1.0, r0 = 5.0, r = 8.0;
                // levels shaped like 1/xi so the growth hypothesis holds
                PiecewiseConstant base = random_pwc(rng, r_star, lambda * r, 16, 0.8, 1.25);
                std::vector<double> levels = base.levels();
                for (std::size_t j = 0; j < levels.size(); ++j) {
                    double mid = 0.5 * (base.breaks()[j] + base.breaks()[j + 1]);
                    levels[j] /= mid;
                }
                PiecewiseConstant p(base.breaks(), std::move(levels));
                rep = lemma4_check(p, gamma, lambda, r_star, r0, r);
                row.alpha = 0.0;
                row.param = gamma;
                break;
            }
            default:
                throw Error("lemma_battery: lemma id must be 1..4");
        }
        row.lhs = rep.lhs;
        row.rhs_core = rep.rhs_core;
        row.C_emp = rep.C_emp;
        row.pass = rep.pass;
        rows.push_back(row);
    }
    return rows;
}

void battery_csv(std::ostream& os, const std::vector<BatteryRow>& rows) {
    os << "lemma,index,seed,alpha,param,lhs,rhs_core,C_emp,pass\n";
    for (const BatteryRow& r : rows) {
        os << r.lemma << ',' << r.index << ',' << r.seed << ','
           << format_g17(r.alpha) << ',' << format_g17(r.param) << ','
           << format_g17(r.lhs) << ',' << format_g17(r.rhs_core) << ','
           << format_g17(r.C_emp) << ',' << (r.pass ? 1 : 0) << '\n';
    }
}

} // namespace blowup
