#include "blowup/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blowup/common.hpp"

namespace blowup {

PiecewiseLinear::PiecewiseLinear(std::vector<Knot> knots) : knots_(std::move(knots)) {
    if (knots_.empty()) throw Error("PiecewiseLinear: no knots");
    for (std::size_t i = 1; i < knots_.size(); ++i)
        if (!(knots_[i].x > knots_[i - 1].x))
            throw Error("PiecewiseLinear: knots must be strictly increasing");
}

double PiecewiseLinear::operator()(double x) const {
    if (knots_.empty()) throw Error("PiecewiseLinear: empty");
    if (x <= knots_.front().x) return knots_.front().y;
    if (x >= knots_.back().x) return knots_.back().y;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const Knot& k) { return v < k.x; });
    const Knot& b = *it;
    const Knot& a = *(it - 1);
    double w = (x - a.x) / (b.x - a.x);
    return a.y + w * (b.y - a.y);
}

PiecewiseLinear PiecewiseLinear::min_with_constant(double c) const {
    std::vector<Knot> out;
    out.reserve(knots_.size() + 4);
    auto push = [&out](double x, double y) {
        if (!out.empty() && out.back().x == x) return;
        out.push_back({x, y});
    };
    push(knots_.front().x, std::min(knots_.front().y, c));
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        const Knot& a = knots_[i - 1];
        const Knot& b = knots_[i];
        bool above_a = a.y > c, above_b = b.y > c;
        if (above_a != above_b) {
            // Segment crosses the level c; add the exact crossing point.
            double xc = a.x + (c - a.y) * (b.x - a.x) / (b.y - a.y);
            if (xc > a.x && xc < b.x) push(xc, c);
        }
        push(b.x, std::min(b.y, c));
    }
    return PiecewiseLinear(std::move(out));
}

void PiecewiseLinear::append(double x, double y) {
    if (knots_.empty()) {
        knots_.push_back({x, y});
        return;
    }
    if (!(x > knots_.back().x)) throw Error("PiecewiseLinear::append: x must increase");
    knots_.push_back({x, y});
}

PiecewiseLinear PiecewiseLinear::clipped(double a, double b) const {
    if (!(a < b)) throw Error("PiecewiseLinear::clipped: need a < b");
    std::vector<Knot> out;
    out.push_back({a, (*this)(a)});
    for (const Knot& k : knots_)
        if (k.x > a && k.x < b) out.push_back(k);
    out.push_back({b, (*this)(b)});
    return PiecewiseLinear(std::move(out));
}

double PiecewiseLinear::min_on(double a, double b) const {
    double m = std::min((*this)(a), (*this)(b));
    for (const Knot& k : knots_)
        if (k.x > a && k.x < b) m = std::min(m, k.y);
    return m;
}

PiecewiseConstant::PiecewiseConstant(std::vector<double> breaks, std::vector<double> levels)
    : breaks_(std::move(breaks)), levels_(std::move(levels)) {
    if (breaks_.size() < 2 || levels_.size() + 1 != breaks_.size())
        throw Error("PiecewiseConstant: need n+1 breakpoints for n levels");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
        if (!(breaks_[i] > breaks_[i - 1]))
            throw Error("PiecewiseConstant: breakpoints must be strictly increasing");
}

std::size_t PiecewiseConstant::segment(double x) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
    if (i == 0 || i > levels_.size() + 1)
        throw DomainError("PiecewiseConstant: argument outside support", x);
    if (i == levels_.size() + 1) {
        if (x > breaks_.back())
            throw DomainError("PiecewiseConstant: argument outside support", x);
        return levels_.size() - 1;
    }
    return i - 1;
}

double PiecewiseConstant::operator()(double x) const { return levels_[segment(x)]; }

double PiecewiseConstant::integral(double a, double b) const {
    if (a > b) return -integral(b, a);
    if (a == b) return 0.0;
    if (a < breaks_.front() || b > breaks_.back())
        throw DomainError("PiecewiseConstant::integral: range outside support", a);
    double total = 0.0;
    std::size_t i = segment(a);
    double x = a;
    while (x < b) {
        double right = std::min(b, breaks_[i + 1]);
        total += levels_[i] * (right - x);
        x = right;
        ++i;
    }
    return total;
}

double PiecewiseConstant::window_min(double a, double b, double fallback) const {
    a = std::max(a, breaks_.front());
    b = std::min(b, breaks_.back());
    if (!(a < b)) return fallback;
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        // Segment [breaks_[i], breaks_[i+1]) meets the open window (a, b)?
        if (breaks_[i] < b && breaks_[i + 1] > a) m = std::min(m, levels_[i]);
    }
    return std::isfinite(m) ? m : fallback;
}

double PiecewiseConstant::window_max(double a, double b, double fallback) const {
    a = std::max(a, breaks_.front());
    b = std::min(b, breaks_.back());
    if (!(a < b)) return fallback;
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (breaks_[i] < b && breaks_[i + 1] > a) m = std::max(m, levels_[i]);
    }
    return std::isfinite(m) ? m : fallback;
}

} // namespace blowup
