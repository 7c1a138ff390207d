/// @file piecewise.hpp
/// Exact piecewise representations used by the minorant construction and
/// the inequality test battery.

#pragma once

#include <cstddef>
#include <vector>

namespace blowup {

/// Continuous piecewise-linear function on [knots.front().x, knots.back().x],
/// extended by its end values outside that interval.
class PiecewiseLinear {
public:
    struct Knot {
        double x;
        double y;
    };

    PiecewiseLinear() = default;
    explicit PiecewiseLinear(std::vector<Knot> knots);

    double operator()(double x) const;
    double front_x() const { return knots_.front().x; }
    double back_x() const { return knots_.back().x; }
    double back_y() const { return knots_.back().y; }
    const std::vector<Knot>& knots() const { return knots_; }
    bool empty() const { return knots_.empty(); }

    /// Pointwise min with a constant; inserts crossing knots so the result
    /// is exact.
    PiecewiseLinear min_with_constant(double c) const;

    /// Appends a knot at x (> back_x()) with value y, extending linearly.
    void append(double x, double y);

    /// Restriction to [a, b] with knots inserted at the ends.
    PiecewiseLinear clipped(double a, double b) const;

    double min_on(double a, double b) const;

private:
    std::vector<Knot> knots_;
};

/// Right-continuous step function: value levels[i] on
/// [breaks[i], breaks[i+1]), i = 0..n-1, with breaks of size n+1.
/// Undefined (throws) outside [breaks.front(), breaks.back()].
class PiecewiseConstant {
public:
    PiecewiseConstant() = default;
    PiecewiseConstant(std::vector<double> breaks, std::vector<double> levels);

    double operator()(double x) const;
    double lo() const { return breaks_.front(); }
    double hi() const { return breaks_.back(); }
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& levels() const { return levels_; }

    /// Exact integral over [a, b] within the support.
    double integral(double a, double b) const;

    /// Infimum over the open window (a, b) intersected with the support;
    /// returns fallback if the intersection is empty.
    double window_min(double a, double b, double fallback) const;
    double window_max(double a, double b, double fallback) const;

private:
    std::size_t segment(double x) const;

    std::vector<double> breaks_;
    std::vector<double> levels_;
};

} // namespace blowup
