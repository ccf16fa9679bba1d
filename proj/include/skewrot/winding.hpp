#pragma once

#include <vector>

#include "skewrot/geometry.hpp"
#include "skewrot/maps.hpp"

namespace skewrot {

// One circular-arc segment of an orbit: the path from `start` swept about
// `center` by the signed angle `sweep` (possibly many turns).
struct Arc {
    Point center;
    Point start;
    double sweep = 0.0;
};

inline Point arc_point(const Arc& a, double t) {
    // position after fraction t of the sweep
    const Complex c = to_complex(a.center);
    const Complex d = to_complex(a.start) - c;
    return to_point(c + d * std::polar(1.0, t * a.sweep));
}

// Continuous change of arg(z - ref) as z travels the arc.  Exact winding:
// never reduced mod 2*pi, so rotation angles beyond a half turn are kept.
// Subdivides adaptively until each piece provably turns less than a half turn
// about ref; throws DegenerateCenterError if the arc passes through ref.
double arc_winding(const Arc& a, Point ref);

// apply one factor, recording the arc the point travels
Point apply_traced(const SkewRotation& m, Point z, Arc& arc);

// apply the whole product, appending one arc per factor
Point apply_traced(const MapProduct& prod, Point z, std::vector<Arc>& arcs);

// continuous angle change about ref across one application of prod
double product_winding(const MapProduct& prod, Point z, Point ref);

}  // namespace skewrot
