#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "skewrot/exec.hpp"
#include "skewrot/maps.hpp"

namespace skewrot {

struct OrbitTrace {
    MapProduct product;
    Point initial;
    // full_steps[k] = T^{k+1}(initial)
    std::vector<Point> full_steps;
    // images after each factor, factors.size() entries per step; the last one
    // of each step equals the step's full_steps entry exactly
    std::vector<Point> half_steps;
    bool has_half_steps = false;

    std::size_t n() const { return full_steps.size(); }
};

OrbitTrace iterate_orbit(const MapProduct& prod, Point z0, std::size_t n,
                         bool record_half_steps = false);

struct AnnulusEstimate {
    double rho_min = 0.0;
    double rho_max = 0.0;
};

// extent of |z - center| over the initial point and all full steps
AnnulusEstimate radial_bounds(const OrbitTrace& trace, Point center);

// separatrix the escape bookkeeping tracks crossings of: the vertical line
// x = 0, or the locus |z - f1| - |z - f2| = c
struct Separatrix {
    enum class Kind { imaginary_axis, hyperbola };
    Kind kind = Kind::imaginary_axis;
    double c = 0.0;
    Point f1;
    Point f2;
};

struct EscapeReport {
    bool escaped = false;
    std::optional<std::size_t> first_exit_step;
    // (step index, ordinate of the separatrix crossing), in traversal order
    std::vector<std::pair<std::size_t, double>> axis_crossings;
    // fraction of consecutive crossing pairs with strictly increasing ordinate
    double monotone_fraction = 1.0;
};

// crossings of every factor arc with the separatrix, solved on the true arc;
// throws NoCrossingsError when the orbit never meets it
EscapeReport detect_escape(const OrbitTrace& trace, double R_escape, const Separatrix& sep);

// streaming variant: iterates up to max_steps, stops at the first point with
// |z| >= R_escape; avoids storing long traces
EscapeReport run_escape(const MapProduct& prod, Point z0, std::size_t max_steps, double R_escape,
                        const Separatrix& sep);

// Starting point at distance rho0 from (-1, 0) placed so that the first arc
// about that center has its arc-length midpoint on the vertical line x = 0;
// h is the signed arc parameter of that first factor.  Requires rho0 > 1.
Point escape_seed(double h, double rho0);

struct RotationNumberEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::size_t n_steps = 0;
};

// mean continuous angle advance per step about `center`, batch-means standard
// error over 10 batches; needs >= 100 steps; throws UnboundedOrbitError when
// the radial extent varies more than tenfold
RotationNumberEstimate rotation_number(const OrbitTrace& trace, Point center);

struct SideSequenceReport {
    double c = 0.0;                     // level used
    double alternation_fraction = 0.0;  // fraction of steps whose path crosses {H = c}
    std::size_t n_pairs = 0;            // number of steps counted
    // sign of combined_h - c at the initial point and every recorded point,
    // in time order: +1 above, -1 below, 0 on the level
    std::vector<int> sides;
};

// Each map step travels along one circular arc per factor.  Classifies every
// recorded point by the side of {combined_h = c} it lands on, and counts the
// fraction of steps whose swept path crosses the level set.  The sweep is
// evaluated on the true arcs (H along an arc about one center has its
// interior extrema where the arc is radially aligned with the other centers,
// so the swept H-interval is exact for two-center products); endpoint-only
// side comparisons miss the arcs that cross and return.  When c is absent it
// is chosen by a scan of the observed H-intervals: the level inside the
// largest number of per-step sweeps.
SideSequenceReport oval_side_sequence(const OrbitTrace& trace, const CombinedHamiltonian& H,
                                      std::optional<double> c = std::nullopt);

// streaming radial extent: rho bounds about `center` after n steps, with
// running maxima captured at the requested step counts
struct RadialScan {
    double rho_min = 0.0;
    double rho_max = 0.0;
    std::vector<double> checkpoint_rho_max;
};

RadialScan radial_extent_scan(const MapProduct& prod, Point z0, std::size_t n, Point center,
                              const std::vector<std::size_t>& checkpoints = {});

struct RadialScanCase {
    MapProduct prod;
    Point z0;
};

// one scan per case; the parallel path is the sweep kernel
std::vector<RadialScan> radial_extent_scan_batch(const std::vector<RadialScanCase>& cases,
                                                 std::size_t n, Point center,
                                                 const std::vector<std::size_t>& checkpoints,
                                                 Exec exec = Exec::parallel);

}  // namespace skewrot
