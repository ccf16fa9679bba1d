#include "skewrot/winding.hpp"

namespace skewrot {

namespace {

double angle_about(Point ref, Point z) { return std::atan2(z.y - ref.y, z.x - ref.x); }

// winding along the sub-arc t in [t0, t1] of `a` about ref
double wind_rec(const Arc& a, Point ref, double t0, double t1, Point p0, Point p1, int depth) {
    const double d0 = dist(p0, ref);
    const double d1 = dist(p1, ref);
    if (d0 < kDegenerateRadius || d1 < kDegenerateRadius)
        throw DegenerateCenterError("arc_winding: arc passes through the reference point");
    const double sub_sweep = std::abs(a.sweep) * (t1 - t0);
    const double rho = dist(a.start, a.center);
    // chord length <= rho * sub_sweep; when that is at most half the distance
    // to ref, the subtended turn about ref is under 30 degrees, so the wrapped
    // difference below is the true continuous change
    if (rho * sub_sweep <= 0.5 * std::min(d0, d1))
        return wrap_pm_pi(angle_about(ref, p1) - angle_about(ref, p0));
    if (depth > 64)
        throw DegenerateCenterError("arc_winding: subdivision limit (arc too close to reference)");
    const double tm = 0.5 * (t0 + t1);
    const Point pm = arc_point(a, tm);
    return wind_rec(a, ref, t0, tm, p0, pm, depth + 1) + wind_rec(a, ref, tm, t1, pm, p1, depth + 1);
}

}  // namespace

double arc_winding(const Arc& a, Point ref) {
    // same center: the winding is the sweep itself, exactly
    if (a.center == ref) return a.sweep;
    if (a.sweep == 0.0) return 0.0;
    return wind_rec(a, ref, 0.0, 1.0, a.start, arc_point(a, 1.0), 0);
}

Point apply_traced(const SkewRotation& m, Point z, Arc& arc) {
    const double rho = dist(z, m.center);
    if (rho < kDegenerateRadius)
        throw DegenerateCenterError("apply_traced: point coincides with the rotation center");
    arc = Arc{m.center, z, m.signed_h() / rho};
    return apply(m, z);
}

Point apply_traced(const MapProduct& prod, Point z, std::vector<Arc>& arcs) {
    Point w = z;
    for (const auto& f : prod.factors) {
        Arc a;
        w = apply_traced(f, w, a);
        arcs.push_back(a);
    }
    return w;
}

double product_winding(const MapProduct& prod, Point z, Point ref) {
    double total = 0.0;
    Point w = z;
    for (const auto& f : prod.factors) {
        Arc a;
        w = apply_traced(f, w, a);
        total += arc_winding(a, ref);
    }
    return total;
}

}  // namespace skewrot
