#include "skewrot/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewrot/errors.hpp"
#include "skewrot/winding.hpp"

namespace skewrot {

OrbitTrace iterate_orbit(const MapProduct& prod, Point z0, std::size_t n,
                         bool record_half_steps) {
    OrbitTrace t;
    t.product = prod;
    t.initial = z0;
    t.has_half_steps = record_half_steps;
    t.full_steps.reserve(n);
    if (record_half_steps) t.half_steps.reserve(n * prod.factors.size());
    Point z = z0;
    for (std::size_t k = 0; k < n; ++k) {
        for (const auto& f : prod.factors) {
            z = apply(f, z);
            if (record_half_steps) t.half_steps.push_back(z);
        }
        t.full_steps.push_back(z);
    }
    return t;
}

AnnulusEstimate radial_bounds(const OrbitTrace& trace, Point center) {
    double lo = dist(trace.initial, center);
    double hi = lo;
    for (const auto& p : trace.full_steps) {
        const double d = dist(p, center);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

namespace {

double separatrix_value(const Separatrix& sep, Point p) {
    if (sep.kind == Separatrix::Kind::imaginary_axis) return p.x;
    return dist(p, sep.f1) - dist(p, sep.f2) - sep.c;
}

// crossings of one arc with the line x = 0, ordered along the traversal,
// reported as (t in (0,1], y at the crossing)
void line_crossings(const Arc& arc, std::vector<std::pair<double, double>>& out) {
    const double rho = dist(arc.start, arc.center);
    const double cx = arc.center.x;
    const double disc = rho * rho - cx * cx;
    if (disc <= 0.0 || arc.sweep == 0.0) return;  // misses or grazes the line
    const double root = std::sqrt(disc);
    const double theta0 = std::atan2(arc.start.y - arc.center.y, arc.start.x - arc.center.x);
    for (const double y : {arc.center.y + root, arc.center.y - root}) {
        const double theta = std::atan2(y - arc.center.y, -cx);
        // solve theta0 + t*sweep = theta (mod 2pi) for t in (0, 1]
        double delta = std::fmod((theta - theta0) * (arc.sweep > 0 ? 1.0 : -1.0), kTwoPi);
        if (delta < 0.0) delta += kTwoPi;
        const double span = std::abs(arc.sweep);
        for (double s = delta == 0.0 ? kTwoPi : delta; s <= span; s += kTwoPi)
            out.emplace_back(s / span, y);
    }
}

// sign-scan plus bisection for the curved separatrix
void hyperbola_crossings(const Arc& arc, const Separatrix& sep,
                         std::vector<std::pair<double, double>>& out) {
    const int pieces = std::max(4, static_cast<int>(std::ceil(std::abs(arc.sweep) / 0.2)));
    double t_prev = 0.0;
    double g_prev = separatrix_value(sep, arc.start);
    for (int i = 1; i <= pieces; ++i) {
        const double t = static_cast<double>(i) / pieces;
        const double g = separatrix_value(sep, arc_point(arc, t));
        if ((g_prev < 0.0 && g >= 0.0) || (g_prev > 0.0 && g <= 0.0)) {
            double lo = t_prev, hi = t;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = separatrix_value(sep, arc_point(arc, mid));
                if ((gm < 0.0) == (g_prev < 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            out.emplace_back(hi, arc_point(arc, hi).y);
        }
        t_prev = t;
        g_prev = g;
    }
}

void arc_separatrix_crossings(const Arc& arc, const Separatrix& sep,
                              std::vector<std::pair<double, double>>& out) {
    out.clear();
    if (sep.kind == Separatrix::Kind::imaginary_axis)
        line_crossings(arc, out);
    else
        hyperbola_crossings(arc, sep, out);
    std::sort(out.begin(), out.end());
}

EscapeReport finalize_escape(EscapeReport rep) {
    if (rep.axis_crossings.empty())
        throw NoCrossingsError("detect_escape: orbit never meets the separatrix");
    std::size_t up = 0, pairs = 0;
    for (std::size_t i = 1; i < rep.axis_crossings.size(); ++i) {
        ++pairs;
        if (rep.axis_crossings[i].second > rep.axis_crossings[i - 1].second) ++up;
    }
    rep.monotone_fraction = pairs == 0 ? 1.0 : static_cast<double>(up) / static_cast<double>(pairs);
    return rep;
}

}  // namespace

EscapeReport detect_escape(const OrbitTrace& trace, double R_escape, const Separatrix& sep) {
    EscapeReport rep;
    std::vector<std::pair<double, double>> hits;
    Point z = trace.initial;
    for (std::size_t k = 0; k < trace.n(); ++k) {
        for (const auto& f : trace.product.factors) {
            Arc arc;
            z = apply_traced(f, z, arc);
            arc_separatrix_crossings(arc, sep, hits);
            for (const auto& [t, y] : hits) rep.axis_crossings.emplace_back(k + 1, y);
        }
        if (!rep.escaped && norm(trace.full_steps[k]) >= R_escape) {
            rep.escaped = true;
            rep.first_exit_step = k + 1;
        }
    }
    return finalize_escape(std::move(rep));
}

EscapeReport run_escape(const MapProduct& prod, Point z0, std::size_t max_steps, double R_escape,
                        const Separatrix& sep) {
    EscapeReport rep;
    std::vector<std::pair<double, double>> hits;
    Point z = z0;
    for (std::size_t k = 0; k < max_steps; ++k) {
        for (const auto& f : prod.factors) {
            Arc arc;
            z = apply_traced(f, z, arc);
            arc_separatrix_crossings(arc, sep, hits);
            for (const auto& [t, y] : hits) rep.axis_crossings.emplace_back(k + 1, y);
        }
        if (norm(z) >= R_escape) {
            rep.escaped = true;
            rep.first_exit_step = k + 1;
            break;
        }
    }
    return finalize_escape(std::move(rep));
}

Point escape_seed(double h, double rho0) {
    if (!(rho0 > 1.0))
        throw NonPositiveRadiusError("escape_seed: rho0 must exceed the center offset 1");
    // the circle |z + 1| = rho0 meets x = 0 at polar angle acos(1/rho0) about
    // (-1, 0); backing up half the first rotation angle puts the midpoint of
    // the first arc on that line
    const double theta = std::acos(1.0 / rho0) - 0.5 * h / rho0;
    return {-1.0 + rho0 * std::cos(theta), rho0 * std::sin(theta)};
}

RotationNumberEstimate rotation_number(const OrbitTrace& trace, Point center) {
    const std::size_t n = trace.n();
    if (n < 100)
        throw InsufficientDataError("rotation_number: need at least 100 steps");
    const AnnulusEstimate ring = radial_bounds(trace, center);
    if (!(ring.rho_min > 0.0) || ring.rho_max / ring.rho_min > 10.0)
        throw UnboundedOrbitError("rotation_number: radial extent varies more than tenfold");

    std::vector<double> inc(n);
    Point z = trace.initial;
    for (std::size_t k = 0; k < n; ++k) {
        inc[k] = product_winding(trace.product, z, center);
        z = trace.full_steps[k];
    }

    constexpr std::size_t kBatches = 10;
    const std::size_t m = n / kBatches;  // >= 10 given the precondition
    std::vector<double> batch(kBatches, 0.0);
    for (std::size_t b = 0; b < kBatches; ++b) {
        for (std::size_t i = 0; i < m; ++i) batch[b] += inc[b * m + i];
        batch[b] /= static_cast<double>(m);
    }
    double mean = 0.0;
    for (const double v : batch) mean += v;
    mean /= static_cast<double>(kBatches);
    double var = 0.0;
    for (const double v : batch) var += (v - mean) * (v - mean);
    var /= static_cast<double>(kBatches - 1);
    return {mean, std::sqrt(var / static_cast<double>(kBatches)), kBatches * m};
}

namespace {

// Extends [lo, hi] to cover combined_h along the arc the map moves A through
// (ending at the recorded image B).  H restricted to a circle about the arc's
// own center is a sum of distance terms whose interior extrema sit where the
// arc is radially aligned with each other center, so endpoint values plus
// those critical angles bracket the sweep exactly for two-center H; a coarse
// subsample guards sums of three or more terms.
void arc_h_range(const SkewRotation& rot, Point A, Point B, const CombinedHamiltonian& H,
                 double& lo, double& hi) {
    const double ha = combined_h(H, A);
    const double hb = combined_h(H, B);
    lo = std::min(lo, std::min(ha, hb));
    hi = std::max(hi, std::max(ha, hb));
    const Point F = rot.center;
    const double rho = dist(A, F);
    if (rho < kDegenerateRadius) return;
    const double th0 = std::atan2(A.y - F.y, A.x - F.x);
    const double dth = rotation_angle(rot, rho);
    const bool full_turn = std::abs(dth) >= kTwoPi;
    const auto visit = [&](double th) {
        const Point p{F.x + rho * std::cos(th), F.y + rho * std::sin(th)};
        const double v = combined_h(H, p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    for (const Point& G : H.centers) {
        if (G == F) continue;
        const double th_g = std::atan2(G.y - F.y, G.x - F.x);
        for (const double ext : {th_g, th_g + kPi}) {
            if (full_turn) {
                visit(ext);
                continue;
            }
            const double rel = wrap_angle(ext - th0);
            const bool inside = dth >= 0.0 ? rel <= dth : rel >= kTwoPi + dth;
            if (inside) visit(ext);
        }
    }
    if (H.centers.size() > 2) {
        constexpr int kSub = 16;
        for (int s = 1; s < kSub; ++s) visit(th0 + dth * s / kSub);
    }
}

}  // namespace

SideSequenceReport oval_side_sequence(const OrbitTrace& trace, const CombinedHamiltonian& H,
                                      std::optional<double> c) {
    if (!trace.has_half_steps || trace.product.factors.empty())
        throw std::invalid_argument("oval_side_sequence: needs a trace with recorded half steps");
    const std::size_t n = trace.n();
    const std::size_t m = trace.product.factors.size();

    // per-step H-interval swept by the true arcs
    std::vector<std::pair<double, double>> swept(n);
    Point cur = trace.initial;
    for (std::size_t k = 0; k < n; ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
            const Point next = trace.half_steps[k * m + j];
            arc_h_range(trace.product.factors[j], cur, next, H, lo, hi);
            cur = next;
        }
        swept[k] = {lo, hi};
    }

    double level;
    if (c) {
        level = *c;
    } else {
        // level inside the largest number of swept intervals (plane-sweep over
        // interval endpoints; midpoint of the densest gap, first on ties)
        std::vector<std::pair<double, int>> events;
        events.reserve(2 * n);
        for (const auto& iv : swept) {
            events.push_back({iv.first, +1});
            events.push_back({iv.second, -1});
        }
        std::sort(events.begin(), events.end());
        int depth = 0, best = -1;
        level = swept.empty() ? 0.0 : swept.front().first;
        for (std::size_t i = 0; i + 1 < events.size(); ++i) {
            depth += events[i].second;
            if (events[i + 1].first > events[i].first && depth > best) {
                best = depth;
                level = 0.5 * (events[i].first + events[i + 1].first);
            }
        }
    }

    SideSequenceReport rep;
    rep.c = level;
    const auto side_of = [&](Point z) {
        const double d = combined_h(H, z) - level;
        return d > 0.0 ? 1 : d < 0.0 ? -1 : 0;
    };
    rep.sides.reserve(1 + n * m);
    rep.sides.push_back(side_of(trace.initial));
    for (const Point& z : trace.half_steps) rep.sides.push_back(side_of(z));

    std::size_t crossings = 0;
    for (const auto& iv : swept)
        if (iv.first < level && level < iv.second) ++crossings;
    rep.n_pairs = n;
    rep.alternation_fraction = n == 0 ? 0.0 : static_cast<double>(crossings) / static_cast<double>(n);
    return rep;
}

RadialScan radial_extent_scan(const MapProduct& prod, Point z0, std::size_t n, Point center,
                              const std::vector<std::size_t>& checkpoints) {
    RadialScan scan;
    double lo = dist(z0, center);
    double hi = lo;
    std::size_t next_cp = 0;
    Point z = z0;
    for (std::size_t k = 1; k <= n; ++k) {
        z = apply(prod, z);
        const double d = dist(z, center);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        while (next_cp < checkpoints.size() && checkpoints[next_cp] == k) {
            scan.checkpoint_rho_max.push_back(hi);
            ++next_cp;
        }
    }
    scan.rho_min = lo;
    scan.rho_max = hi;
    return scan;
}

std::vector<RadialScan> radial_extent_scan_batch(const std::vector<RadialScanCase>& cases,
                                                 std::size_t n, Point center,
                                                 const std::vector<std::size_t>& checkpoints,
                                                 Exec exec) {
    std::vector<RadialScan> out(cases.size());
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(cases.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < total; ++i)
            out[static_cast<std::size_t>(i)] = radial_extent_scan(
                cases[static_cast<std::size_t>(i)].prod, cases[static_cast<std::size_t>(i)].z0, n,
                center, checkpoints);
    } else {
        for (std::ptrdiff_t i = 0; i < total; ++i)
            out[static_cast<std::size_t>(i)] = radial_extent_scan(
                cases[static_cast<std::size_t>(i)].prod, cases[static_cast<std::size_t>(i)].z0, n,
                center, checkpoints);
    }
    return out;
}

}  // namespace skewrot
