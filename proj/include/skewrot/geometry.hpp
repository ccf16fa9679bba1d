#pragma once

#include <cmath>
#include <complex>

#include "skewrot/errors.hpp"

namespace skewrot {

using Complex = std::complex<double>;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Complex to_complex(Point p) { return {p.x, p.y}; }
inline Point to_point(Complex z) { return {z.real(), z.imag()}; }
inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

// below this center distance a skew rotation is considered degenerate
constexpr double kDegenerateRadius = 1e-300;

// reduce an angle to [0, 2*pi)
double wrap_angle(double phi);

// reduce an angle difference to (-pi, pi]
double wrap_pm_pi(double d);

// coordinates about a marked center: r = 1/|z - c| (inverse radius), phi in [0, 2*pi)
struct InversePolarFrame {
    Point center;
};

struct InversePolar {
    double r = 0.0;
    double phi = 0.0;
};

// throws DegenerateCenterError when |z - center| < kDegenerateRadius
InversePolar to_inverse_polar(const InversePolarFrame& frame, Point z);

// throws NonPositiveRadiusError when r <= 0
Point from_inverse_polar(const InversePolarFrame& frame, double r, double phi);

}  // namespace skewrot
