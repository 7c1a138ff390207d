#include "blowup/scalar_fn.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/common.hpp"

namespace blowup {

ScalarFn ScalarFn::from_expression(Expression e, double lo, double hi, bool positive) {
    if (e.empty()) throw Error("ScalarFn: empty expression");
    ScalarFn f;
    f.desc_ = e.print();
    f.fn_ = [e = std::move(e)](double x) { return e.evaluate(x); };
    f.lo_ = lo;
    f.hi_ = hi;
    f.positive_ = positive;
    return f;
}

ScalarFn ScalarFn::from_text(std::string_view text, std::string_view variable,
                             double lo, double hi, bool positive) {
    return from_expression(Expression::parse(text, variable), lo, hi, positive);
}

ScalarFn ScalarFn::from_samples(std::vector<double> x, std::vector<double> y, bool positive) {
    if (x.size() < 2 || x.size() != y.size())
        throw Error("ScalarFn: sample table needs at least two matched points");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw Error("ScalarFn: sample abscissae must be strictly increasing");
    ScalarFn f;
    f.lo_ = x.front();
    f.hi_ = x.back();
    f.positive_ = positive;
    f.desc_ = "table[" + std::to_string(x.size()) + "]";
    f.fn_ = [x = std::move(x), y = std::move(y)](double t) {
        auto it = std::upper_bound(x.begin(), x.end(), t);
        std::size_t i = static_cast<std::size_t>(it - x.begin());
        if (i == 0) i = 1;
        if (i == x.size()) i = x.size() - 1;
        double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
        return y[i - 1] + w * (y[i] - y[i - 1]);
    };
    return f;
}

ScalarFn ScalarFn::from_callable(std::function<double(double)> f, std::string description,
                                 double lo, double hi, bool positive) {
    if (!f) throw Error("ScalarFn: null callable");
    ScalarFn s;
    s.fn_ = std::move(f);
    s.desc_ = std::move(description);
    s.lo_ = lo;
    s.hi_ = hi;
    s.positive_ = positive;
    return s;
}

double ScalarFn::operator()(double x) const {
    if (!fn_) throw Error("ScalarFn: evaluating an empty function");
    if (!(x > lo_) || !(x < hi_)) {
        // Sample tables own their endpoints; everything else is open.
        if (!(x >= lo_ && x <= hi_) || desc_.rfind("table[", 0) != 0)
            throw DomainError("argument " + format_g17(x) + " outside domain (" +
                              format_g17(lo_) + ", " + format_g17(hi_) + ") of " + desc_, x);
    }
    double v = fn_(x);
    if (!std::isfinite(v))
        throw DomainError(desc_ + " is not finite at " + format_g17(x), x);
    if (positive_ && !(v > 0.0))
        throw PositivityError(desc_ + " must be positive, got " + format_g17(v) +
                              " at " + format_g17(x), x, v);
    return v;
}

double ScalarFn::extended(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) x = std::nextafter(hi_, lo_);
    return (*this)(x);
}

} // namespace blowup
