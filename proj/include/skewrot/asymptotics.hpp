#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "skewrot/exec.hpp"
#include "skewrot/maps.hpp"

namespace skewrot {

// One application of a product, measured in an inverse-polar frame.
// angle_residual = (continuous change of phi) - angular_sum * r
// radius_residual = r_after - r
// A product of skew rotations leaves the angle residual at order r^2 and the
// radius residual at order r^3, in any frame.
struct ResidualSample {
    double r = 0.0;
    double phi = 0.0;
    double angle_residual = 0.0;
    double radius_residual = 0.0;
};

// one sample per (r, phi) combination, row-major in r
std::vector<ResidualSample> sample_residuals(const MapProduct& prod,
                                             const InversePolarFrame& frame,
                                             const std::vector<double>& rs,
                                             const std::vector<double>& phis,
                                             Exec exec = Exec::parallel);

enum class ResidualKind { angle, radius };

struct OrderFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    std::size_t n_samples = 0;
};

// residual magnitudes below this are double-precision noise and are excluded
// from order fits
constexpr double kResidualNoiseFloor = 1e-14;

// log-log least squares of |residual| against r; throws InsufficientDataError
// when fewer than 3 samples survive the noise floor (which is itself the
// expected outcome for exactly-conserved quantities)
OrderFit fit_order(const std::vector<ResidualSample>& samples, ResidualKind kind);

// evaluation grid: n_rho geometrically spaced radii times n_phi angles about a center
struct AnnulusGrid {
    Point center;
    double rho_min = 1.0;
    double rho_max = 10.0;
    int n_rho = 10;
    int n_phi = 10;
};

// Max |det J - 1| over the grid; J of the product by central differences with
// step fd_step_rel * (distance to the nearest factor center).  Throws
// DegenerateCenterError when a grid point sits closer than 10 steps to a
// factor center.
double max_jacobian_det_error(const MapProduct& prod, const AnnulusGrid& grid,
                              double fd_step_rel = 1e-6, Exec exec = Exec::parallel);

// Whether the image of a closed curve (simple polygon, >= 16 vertices) meets
// the curve itself — the intersection property that blocks net radial
// transport.  The polygon is refined until consecutive image vertices are
// closer than 1% of the curve diameter; throws RefinementLimitError past
// max_vertices.
bool image_intersects_curve(const MapProduct& prod, std::vector<Point> curve,
                            std::size_t max_vertices = std::size_t{1} << 20);

// partial derivatives of the change of frame (r, phi)[a] -> (r~, phi~)[b]
struct ConcordanceRow {
    double r = 0.0;
    double dphi_dphi = 0.0;  // -> 1 as r -> 0
    double dr_dr = 0.0;      // -> 1 as r -> 0
    double dr_dphi = 0.0;    // -> 0 at order r^2
};

struct ConcordanceReport {
    std::vector<ConcordanceRow> rows;
    // order of |dr~/dphi| in r; absent when every sample sits at the noise
    // floor (frames with a common center)
    std::optional<OrderFit> cross_order;
};

// central differences with relative step 1e-5
ConcordanceReport check_concordance(const InversePolarFrame& frame_a,
                                    const InversePolarFrame& frame_b,
                                    const std::vector<double>& rs, double phi = 1.0,
                                    Exec exec = Exec::parallel);

}  // namespace skewrot
