#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace skewrot {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};

// ordinary least squares y = slope*x + intercept; throws InsufficientDataError
// when fewer than 2 points (or all x equal)
LineFit ols(const std::vector<double>& xs, const std::vector<double>& ys);

// Log-log power-law fit d(t) ~ C * t^p on the second half of the series
// (transient discarded).  `series` holds (t, d) pairs with t, d > 0.
// Throws DegenerateSeriesError when d is constant on the fitted window,
// InsufficientDataError when fewer than 3 points survive.
LineFit growth_exponent(const std::vector<std::pair<double, double>>& series);

// convenience: d indexed by t = 1..n
LineFit growth_exponent(const std::vector<double>& distances);

}  // namespace skewrot
