#include "blowup/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/common.hpp"

namespace blowup {

void NonlinearitySpec::validate() const {
    if (!(c0 > 0.0)) throw Error("NonlinearitySpec: c0 must be positive");
    if (!(sigma > 1.0)) throw Error("NonlinearitySpec: sigma must exceed 1");
    if (!(theta > 1.0)) throw Error("NonlinearitySpec: theta must exceed 1");
    if (!(r_star > 0.0)) throw Error("NonlinearitySpec: r_star must be positive");
    if (nu_log != 0.0 && mu_log != 0.0)
        throw Error("NonlinearitySpec: simultaneous log factors in |x| and u are "
                    "outside the parametric family");
    if (nu_log != 0.0 && lambda != 3.0)
        throw Error("NonlinearitySpec: the u-side log factor requires lambda = 3");
}

std::string ConvergenceVerdict::status_text() const {
    switch (status) {
        case Convergence::Converges: return "Converges";
        case Convergence::Diverges: return "Diverges";
        default: return "Inconclusive";
    }
}

std::string ClassificationVerdict::status_text() const {
    switch (status) {
        case Classification::TrivialOnly: return "TrivialOnly";
        case Classification::NontrivialExists: return "NontrivialExists";
        default: return "Inconclusive";
    }
}

namespace {

constexpr int kWindows = 41; // upper edge a*2^41 ~ 2e12, the double-precision comfort zone

/// Integral of F over [a*2^k, a*2^(k+1)] in the log variable, one window per k.
std::vector<double> window_integrals(const std::function<double(double)>& F, double a) {
    std::vector<double> I(kWindows);
    const int panels = 64;
    double lna = std::log(a), ln2 = std::log(2.0);
    for (int k = 0; k < kWindows; ++k) {
        double u0 = lna + k * ln2;
        double du = ln2 / (2 * panels);
        // Composite Simpson on integrand F(e^u) e^u.
        auto G = [&](double u) {
            double t = std::exp(u);
            return F(t) * t;
        };
        double sum = G(u0) + G(u0 + 2 * panels * du);
        for (int j = 1; j < 2 * panels; ++j)
            sum += G(u0 + j * du) * (j % 2 ? 4.0 : 2.0);
        I[k] = sum * du / 3.0;
    }
    return I;
}

/// Decides convergence of sum I_k from the shape of the window integrals.
/// Level 1: a stable polynomial decay exponent beta (I_k ~ k^-beta).
/// Level 2: a geometric ratio clearly away from 1.
/// Level 3: at the harmonic boundary, monotonicity of k*I_k.
ConvergenceVerdict decide(std::vector<double> I) {
    ConvergenceVerdict v;
    v.window_integrals = I;

    bool vanishing = true;
    for (int k = kWindows - 8; k < kWindows; ++k)
        if (I[k] > 1e-280) vanishing = false;
    if (vanishing) {
        v.status = Convergence::Converges;
        v.rule = "tail windows vanish";
        v.tail_exponent = std::numeric_limits<double>::infinity();
        v.tail_ratio = 0.0;
        return v;
    }
    for (double& x : I) x = std::max(x, 1e-300);

    std::vector<double> beta(kWindows - 1);
    for (int k = 0; k + 1 < kWindows; ++k)
        beta[k] = std::log(I[k] / I[k + 1]) / std::log((k + 2.0) / (k + 1.0));

    double bmin = beta[kWindows - 8], bmax = bmin, bsum = 0.0;
    for (int k = kWindows - 8; k + 1 < kWindows; ++k) {
        bmin = std::min(bmin, beta[k]);
        bmax = std::max(bmax, beta[k]);
        bsum += beta[k];
    }
    double bhat = bsum / 7.0;
    v.tail_exponent = bhat;

    std::vector<double> ratios;
    for (int k = kWindows - 9; k + 1 < kWindows; ++k) ratios.push_back(I[k + 1] / I[k]);
    std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
    double rho = ratios[ratios.size() / 2];
    v.tail_ratio = rho;

    if (bmax - bmin <= 0.25) {
        if (bhat >= 1.1) {
            v.status = Convergence::Converges;
            v.rule = "stable window exponent above 1";
        } else if (bhat <= 0.9) {
            v.status = Convergence::Diverges;
            v.rule = "stable window exponent below 1";
        } else {
            // Harmonic boundary: k*I_k nondecreasing means the tail is at
            // least as heavy as 1/(t ln t), whose sum diverges.
            bool monotone = true;
            for (int k = kWindows - 8; k + 1 < kWindows; ++k)
                if ((k + 2.0) * I[k + 1] < (k + 1.0) * I[k] * (1.0 - 1e-3)) monotone = false;
            if (monotone) {
                v.status = Convergence::Diverges;
                v.rule = "harmonic boundary with nondecreasing k*I_k";
            } else {
                v.status = Convergence::Inconclusive;
                v.rule = "window exponent inside the critical dead band";
            }
        }
        return v;
    }

    if (rho <= 0.98) {
        v.status = Convergence::Converges;
        v.rule = "geometric decay of window integrals";
    } else if (rho >= 1.02) {
        v.status = Convergence::Diverges;
        v.rule = "window integrals fail to decay";
    } else {
        v.status = Convergence::Inconclusive;
        v.rule = "window ratio inside the dead band without a stable exponent";
    }
    return v;
}

std::string num(double x) { return format_g17(x); }

} // namespace

ConvergenceVerdict check_g_condition(const ScalarFn& g) {
    auto F = [&g](double t) {
        double lg = std::log(g(t));
        return std::exp(-(lg + std::log(t)) / 4.0);
    };
    return decide(window_integrals(F, 1.0 + 1e-12));
}

ConvergenceVerdict check_q_condition(const ScalarFn& q, double r_star) {
    if (!(r_star > 0.0)) throw Error("check_q_condition: r_star must be positive");
    double a = std::max(r_star, 1.0) * (1.0 + 1e-9);
    auto F = [&q](double r) { return q(r); };
    ConvergenceVerdict v = decide(window_integrals(F, a));
    return v;
}

std::pair<ScalarFn, ScalarFn> derive_q_g(const NonlinearitySpec& spec) {
    spec.validate();
    const double c0 = spec.c0, lam = spec.lambda, s = spec.s;
    const double mu = spec.mu_log, nu = spec.nu_log;

    if (nu == 0.0) {
        // q(r) = 4^-lambda r^lambda c(r/2), g(t) = t^lambda, for the window
        // parameters sigma = theta = 2.
        std::string ctext = num(c0) + "*(1+r/2)^(" + num(s) + ")";
        if (mu != 0.0) ctext += "*ln(2+r/2)^(" + num(mu) + ")";
        std::string qtext = "4^(" + num(-lam) + ")*r^(" + num(lam) + ")*" + ctext;
        ScalarFn q = ScalarFn::from_text(qtext, "r", 0.0,
                                         std::numeric_limits<double>::infinity(), true);
        ScalarFn g = ScalarFn::from_text("t^(" + num(lam) + ")", "t", 0.0,
                                         std::numeric_limits<double>::infinity(), true);
        return {std::move(q), std::move(g)};
    }

    // u-side log factor (lambda = 3): keep the log with g and bound c over
    // the radial window by its value at both edges.  Valid for r >= 4.
    std::string c_lo = "(1+r/2)^(" + num(s) + ")";
    std::string c_hi = "(1+2*r)^(" + num(s) + ")";
    std::string qtext = num(c0) + "*min(" + c_lo + ", " + c_hi + ")*r^3/64";
    ScalarFn q = ScalarFn::from_text(qtext, "r", 0.0,
                                     std::numeric_limits<double>::infinity(), true);
    ScalarFn g = ScalarFn::from_text("t^3*ln(2+t)^(" + num(nu) + ")", "t", 0.0,
                                     std::numeric_limits<double>::infinity(), true);
    return {std::move(q), std::move(g)};
}

ClassificationVerdict classify(const NonlinearitySpec& spec) {
    spec.validate();
    ClassificationVerdict v;
    const double lam = spec.lambda, s = spec.s, mu = spec.mu_log, nu = spec.nu_log;
    const double s_crit = -lam - 1.0;
    const double tol = 1e-9;

    auto nontrivial_no_formula = [&v](std::string rule) {
        v.status = Classification::NontrivialExists;
        v.rule = std::move(rule);
        v.witness_present = true;
        v.witness_formula_known = false;
        v.witness_formula = "(existence regime; no closed-form profile)";
    };

    if (nu != 0.0) {
        // lambda = 3 with a log factor in u; the boundary is nu = 4, s = -4.
        if (nu > 4.0) {
            if (s >= -4.0 - tol) {
                v.status = Classification::TrivialOnly;
                v.rule = "nu > 4 and s >= -4: only the trivial solution";
            } else {
                double b = (4.0 + s) / (4.0 - nu);
                v.status = Classification::NontrivialExists;
                v.rule = "nu > 4 and s < -4: stretched-exponential profile";
                v.witness_present = true;
                v.witness_formula_known = true;
                v.witness_example = 3;
                v.witness_exponent = b;
                v.witness_formula =
                    "exp(r^(" + num(b) + ")) - exp(r0^(" + num(b) + "))";
            }
        } else {
            nontrivial_no_formula("nu <= 4: nontrivial solutions exist for all s");
        }
        return v;
    }

    if (lam <= 3.0) {
        nontrivial_no_formula("lambda <= 3: nontrivial solutions exist for all s");
        return v;
    }

    if (mu != 0.0) {
        if (std::abs(s - s_crit) <= tol) {
            if (mu >= -1.0) {
                v.status = Classification::TrivialOnly;
                v.rule = "critical s with mu >= -1: only the trivial solution";
            } else {
                double m = -(mu + 1.0) / (lam - 3.0);
                v.status = Classification::NontrivialExists;
                v.rule = "critical s with mu < -1: log-corrected linear profile";
                v.witness_present = true;
                v.witness_formula_known = true;
                v.witness_example = 2;
                v.witness_exponent = m;
                v.witness_formula =
                    "r*ln(r)^(" + num(m) + ") - r0*ln(r0)^(" + num(m) + ")";
            }
        } else if (s > s_crit) {
            v.status = Classification::TrivialOnly;
            v.rule = "s > -lambda-1: integral conditions hold for any log power";
        } else {
            v.status = Classification::Inconclusive;
            v.rule = "s < -lambda-1 with a log factor in |x|: unsettled regime";
        }
        return v;
    }

    if (s >= s_crit - tol) {
        v.status = Classification::TrivialOnly;
        v.rule = "lambda > 3 and s >= -lambda-1: only the trivial solution";
    } else {
        double a = -(4.0 + s) / (lam - 3.0);
        v.status = Classification::NontrivialExists;
        v.rule = "lambda > 3 and s < -lambda-1: power profile";
        v.witness_present = true;
        v.witness_formula_known = true;
        v.witness_example = 1;
        v.witness_exponent = a;
        v.witness_formula = "r^(" + num(a) + ") - r0^(" + num(a) + ")";
    }
    return v;
}

} // namespace blowup
