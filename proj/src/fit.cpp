#include "skewrot/fit.hpp"

#include <cmath>

#include "skewrot/errors.hpp"

namespace skewrot {

LineFit ols(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n)
        throw InsufficientDataError("ols: need at least 2 paired points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw InsufficientDataError("ols: all abscissae equal");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    f.n = n;
    return f;
}

LineFit growth_exponent(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 6)
        throw InsufficientDataError("growth_exponent: series too short");
    const std::size_t start = series.size() / 2;  // drop the transient half
    bool constant = true;
    const double first = series[start].second;
    std::vector<double> lx, ly;
    lx.reserve(series.size() - start);
    ly.reserve(series.size() - start);
    for (std::size_t i = start; i < series.size(); ++i) {
        const auto [t, d] = series[i];
        if (d != first) constant = false;
        if (t > 0.0 && d > 0.0) {
            lx.push_back(std::log(t));
            ly.push_back(std::log(d));
        }
    }
    if (constant)
        throw DegenerateSeriesError("growth_exponent: distance series is constant");
    if (lx.size() < 3)
        throw InsufficientDataError("growth_exponent: fewer than 3 usable points");
    return ols(lx, ly);
}

LineFit growth_exponent(const std::vector<double>& distances) {
    std::vector<std::pair<double, double>> series;
    series.reserve(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i)
        series.emplace_back(static_cast<double>(i + 1), distances[i]);
    return growth_exponent(series);
}

}  // namespace skewrot
