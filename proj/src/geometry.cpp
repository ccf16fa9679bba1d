#include "skewrot/geometry.hpp"

namespace skewrot {

double wrap_angle(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    // fmod can return exactly kTwoPi after the adjustment for tiny negatives
    if (w >= kTwoPi) w = 0.0;
    return w;
}

double wrap_pm_pi(double d) {
    double w = std::remainder(d, kTwoPi);  // in [-pi, pi]
    if (w <= -kPi) w = kPi;
    return w;
}

InversePolar to_inverse_polar(const InversePolarFrame& frame, Point z) {
    const double dx = z.x - frame.center.x;
    const double dy = z.y - frame.center.y;
    const double rho = std::hypot(dx, dy);
    if (rho < kDegenerateRadius)
        throw DegenerateCenterError("to_inverse_polar: point coincides with the frame center");
    return {1.0 / rho, wrap_angle(std::atan2(dy, dx))};
}

Point from_inverse_polar(const InversePolarFrame& frame, double r, double phi) {
    if (!(r > 0.0))
        throw NonPositiveRadiusError("from_inverse_polar: r must be positive");
    const double rho = 1.0 / r;
    return {frame.center.x + rho * std::cos(phi), frame.center.y + rho * std::sin(phi)};
}

}  // namespace skewrot
