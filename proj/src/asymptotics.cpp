#include "skewrot/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewrot/errors.hpp"
#include "skewrot/fit.hpp"
#include "skewrot/winding.hpp"

namespace skewrot {

namespace {

ResidualSample one_residual(const MapProduct& prod, const InversePolarFrame& frame,
                            double r, double phi, double hsum) {
    const Point z = from_inverse_polar(frame, r, phi);
    double dphi = 0.0;
    Point w = z;
    for (const auto& f : prod.factors) {
        Arc a;
        w = apply_traced(f, w, a);
        dphi += arc_winding(a, frame.center);
    }
    const InversePolar after = to_inverse_polar(frame, w);
    return {r, phi, dphi - hsum * r, after.r - r};
}

}  // namespace

std::vector<ResidualSample> sample_residuals(const MapProduct& prod,
                                             const InversePolarFrame& frame,
                                             const std::vector<double>& rs,
                                             const std::vector<double>& phis,
                                             Exec exec) {
    const double hsum = prod.angular_sum();
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(rs.size() * phis.size());
    std::vector<ResidualSample> out(static_cast<std::size_t>(total));
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < total; ++k) {
            const std::size_t i = static_cast<std::size_t>(k) / phis.size();
            const std::size_t j = static_cast<std::size_t>(k) % phis.size();
            out[static_cast<std::size_t>(k)] = one_residual(prod, frame, rs[i], phis[j], hsum);
        }
    } else {
        for (std::ptrdiff_t k = 0; k < total; ++k) {
            const std::size_t i = static_cast<std::size_t>(k) / phis.size();
            const std::size_t j = static_cast<std::size_t>(k) % phis.size();
            out[static_cast<std::size_t>(k)] = one_residual(prod, frame, rs[i], phis[j], hsum);
        }
    }
    return out;
}

OrderFit fit_order(const std::vector<ResidualSample>& samples, ResidualKind kind) {
    std::vector<double> lx, ly;
    double r_min = std::numeric_limits<double>::infinity();
    double r_max = 0.0;
    for (const auto& s : samples) {
        const double res =
            std::abs(kind == ResidualKind::angle ? s.angle_residual : s.radius_residual);
        if (res < kResidualNoiseFloor || s.r <= 0.0) continue;
        lx.push_back(std::log(s.r));
        ly.push_back(std::log(res));
        r_min = std::min(r_min, s.r);
        r_max = std::max(r_max, s.r);
    }
    if (lx.size() < 3)
        throw InsufficientDataError("fit_order: fewer than 3 samples above the noise floor");
    const LineFit f = ols(lx, ly);
    return {f.slope, f.intercept, r_min, r_max, lx.size()};
}

namespace {

double nearest_center_dist(const MapProduct& prod, Point z) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& f : prod.factors) d = std::min(d, dist(z, f.center));
    return d;
}

double det_error_at(const MapProduct& prod, Point z, double fd_step_rel) {
    const double d = nearest_center_dist(prod, z);
    const double h = fd_step_rel * d;
    if (!(d > 10.0 * h))
        throw DegenerateCenterError("max_jacobian_det_error: grid point too close to a center");
    const Point xp = apply(prod, Point{z.x + h, z.y});
    const Point xm = apply(prod, Point{z.x - h, z.y});
    const Point yp = apply(prod, Point{z.x, z.y + h});
    const Point ym = apply(prod, Point{z.x, z.y - h});
    const double axx = (xp.x - xm.x) / (2.0 * h);
    const double ayx = (xp.y - xm.y) / (2.0 * h);
    const double axy = (yp.x - ym.x) / (2.0 * h);
    const double ayy = (yp.y - ym.y) / (2.0 * h);
    return std::abs(axx * ayy - axy * ayx - 1.0);
}

Point grid_point(const AnnulusGrid& g, int i, int j) {
    double rho;
    if (g.n_rho <= 1) {
        rho = g.rho_min;
    } else {
        const double t = static_cast<double>(i) / static_cast<double>(g.n_rho - 1);
        rho = g.rho_min * std::pow(g.rho_max / g.rho_min, t);
    }
    const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(g.n_phi);
    return {g.center.x + rho * std::cos(phi), g.center.y + rho * std::sin(phi)};
}

}  // namespace

double max_jacobian_det_error(const MapProduct& prod, const AnnulusGrid& grid,
                              double fd_step_rel, Exec exec) {
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(grid.n_rho) * grid.n_phi;
    double worst = 0.0;
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(max : worst)
        for (std::ptrdiff_t k = 0; k < total; ++k) {
            const int i = static_cast<int>(k / grid.n_phi);
            const int j = static_cast<int>(k % grid.n_phi);
            worst = std::max(worst, det_error_at(prod, grid_point(grid, i, j), fd_step_rel));
        }
    } else {
        for (std::ptrdiff_t k = 0; k < total; ++k) {
            const int i = static_cast<int>(k / grid.n_phi);
            const int j = static_cast<int>(k % grid.n_phi);
            worst = std::max(worst, det_error_at(prod, grid_point(grid, i, j), fd_step_rel));
        }
    }
    return worst;
}

namespace {

double cross3(Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool bbox_overlap(Point a, Point b, Point c, Point d) {
    return std::min(a.x, b.x) <= std::max(c.x, d.x) && std::min(c.x, d.x) <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= std::max(c.y, d.y) && std::min(c.y, d.y) <= std::max(a.y, b.y);
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
    if (!bbox_overlap(a, b, c, d)) return false;
    const double d1 = cross3(c, d, a);
    const double d2 = cross3(c, d, b);
    const double d3 = cross3(a, b, c);
    const double d4 = cross3(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    // collinear / endpoint touches; bbox overlap already verified
    if (d1 == 0.0 && bbox_overlap(a, a, c, d)) return true;
    if (d2 == 0.0 && bbox_overlap(b, b, c, d)) return true;
    if (d3 == 0.0 && bbox_overlap(c, c, a, b)) return true;
    if (d4 == 0.0 && bbox_overlap(d, d, a, b)) return true;
    return false;
}

// even-odd rule; boundary points are reported by the segment tests instead
bool point_in_polygon(Point p, const std::vector<Point>& poly) {
    bool in = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point a = poly[i];
        const Point b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xc) in = !in;
        }
    }
    return in;
}

double curve_diameter(const std::vector<Point>& c) {
    double xmin = c[0].x, xmax = c[0].x, ymin = c[0].y, ymax = c[0].y;
    for (const auto& p : c) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

}  // namespace

bool image_intersects_curve(const MapProduct& prod, std::vector<Point> curve,
                            std::size_t max_vertices) {
    if (curve.size() < 16)
        throw std::invalid_argument("image_intersects_curve: closed curve needs >= 16 vertices");
    const double target = 0.01 * curve_diameter(curve);
    if (!(target > 0.0))
        throw std::invalid_argument("image_intersects_curve: degenerate curve");

    std::vector<Point> image;
    for (bool refined = true; refined;) {
        refined = false;
        image.clear();
        image.reserve(curve.size());
        for (const auto& v : curve) image.push_back(apply(prod, v));
        std::vector<Point> next;
        next.reserve(2 * curve.size());
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const std::size_t j = (i + 1) % curve.size();
            next.push_back(curve[i]);
            if (dist(image[i], image[j]) > target) {
                next.push_back(
                    Point{0.5 * (curve[i].x + curve[j].x), 0.5 * (curve[i].y + curve[j].y)});
                refined = true;
            }
        }
        if (next.size() > max_vertices)
            throw RefinementLimitError("image_intersects_curve: refinement budget exhausted");
        curve.swap(next);
    }
    image.clear();
    for (const auto& v : curve) image.push_back(apply(prod, v));

    const std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = image[i];
        const Point b = image[(i + 1) % n];
        for (std::size_t j = 0; j < n; ++j) {
            if (segments_intersect(a, b, curve[j], curve[(j + 1) % n])) return true;
        }
    }
    // no edge crossings: intersection still holds if the image straddles the
    // curve (some vertices inside, some outside)
    bool any_in = false, any_out = false;
    for (const auto& p : image) {
        (point_in_polygon(p, curve) ? any_in : any_out) = true;
        if (any_in && any_out) return true;
    }
    return false;
}

ConcordanceReport check_concordance(const InversePolarFrame& frame_a,
                                    const InversePolarFrame& frame_b,
                                    const std::vector<double>& rs, double phi, Exec exec) {
    const auto row_at = [&](double r) {
        const double dr = 1e-5 * r;
        const double dphi = 1e-5 * std::max(1.0, std::abs(phi));
        const auto transfer = [&](double rr, double pp) {
            return to_inverse_polar(frame_b, from_inverse_polar(frame_a, rr, pp));
        };
        const InversePolar pr = transfer(r + dr, phi);
        const InversePolar mr = transfer(r - dr, phi);
        const InversePolar pp = transfer(r, phi + dphi);
        const InversePolar mp = transfer(r, phi - dphi);
        ConcordanceRow row;
        row.r = r;
        row.dr_dr = (pr.r - mr.r) / (2.0 * dr);
        row.dr_dphi = (pp.r - mp.r) / (2.0 * dphi);
        row.dphi_dphi = wrap_pm_pi(pp.phi - mp.phi) / (2.0 * dphi);
        return row;
    };

    ConcordanceReport rep;
    rep.rows.resize(rs.size());
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(rs.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < total; ++i)
            rep.rows[static_cast<std::size_t>(i)] = row_at(rs[static_cast<std::size_t>(i)]);
    } else {
        for (std::ptrdiff_t i = 0; i < total; ++i)
            rep.rows[static_cast<std::size_t>(i)] = row_at(rs[static_cast<std::size_t>(i)]);
    }

    // derivative values below 1e-12 are finite-difference noise
    std::vector<double> lx, ly;
    double r_min = std::numeric_limits<double>::infinity(), r_max = 0.0;
    for (const auto& row : rep.rows) {
        if (std::abs(row.dr_dphi) < 1e-12 || row.r <= 0.0) continue;
        lx.push_back(std::log(row.r));
        ly.push_back(std::log(std::abs(row.dr_dphi)));
        r_min = std::min(r_min, row.r);
        r_max = std::max(r_max, row.r);
    }
    if (lx.size() >= 3) {
        const LineFit f = ols(lx, ly);
        rep.cross_order = OrderFit{f.slope, f.intercept, r_min, r_max, lx.size()};
    }
    return rep;
}

}  // namespace skewrot
