#include "blowup/quadrature.hpp"

#include <cmath>

#include "blowup/common.hpp"

namespace blowup {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double err = left + right - whole;
    if (std::fabs(err) <= 15.0 * tol || (b - a) < 1e-14 * (std::fabs(a) + 1.0))
        return left + right + err / 15.0;
    if (depth >= max_depth)
        throw QuadratureError("adaptive_simpson: refinement depth exhausted");
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, a, b);
    return adapt(f, a, b, fa, fm, fb, whole, abs_tol, 0, max_depth);
}

double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int panels) {
    if (panels < 1) panels = 1;
    const double h = (b - a) / panels;
    double sum = 0.0;
    double fl = f(a);
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = x0 + h;
        const double fm = f(0.5 * (x0 + x1));
        const double fr = f(x1);
        sum += (x1 - x0) / 6.0 * (fl + 4.0 * fm + fr);
        fl = fr;
    }
    return sum;
}

} // namespace blowup
