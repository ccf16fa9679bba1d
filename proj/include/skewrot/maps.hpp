#pragma once

#include <optional>
#include <vector>

#include "skewrot/geometry.hpp"

namespace skewrot {

enum class Orientation : int { counterclockwise = +1, clockwise = -1 };

// Rotation of z about `center` by the angle sign*h/|z - center|, i.e. every
// point travels a circular arc of length |h| about the center.  In inverse
// polar coordinates about the same center this is the shear
// (r, phi) -> (r, phi + h*r).
struct SkewRotation {
    Point center;
    double h = 0.0;
    Orientation orientation = Orientation::counterclockwise;

    double signed_h() const { return static_cast<int>(orientation) * h; }
};

// signed rotation angle at distance rho from the center
inline double rotation_angle(const SkewRotation& m, double rho) { return m.signed_h() / rho; }

// throws DegenerateCenterError when z is within kDegenerateRadius of the center
Point apply(const SkewRotation& m, Point z);

// factor with the given signed arc parameter (sign picks the orientation)
inline SkewRotation make_rotation(Point center, double signed_h) {
    return {center, signed_h < 0 ? -signed_h : signed_h,
            signed_h < 0 ? Orientation::clockwise : Orientation::counterclockwise};
}

// factors applied first-to-last
struct MapProduct {
    std::vector<SkewRotation> factors;

    // sum of signed arc parameters; the effective twist coefficient of the product
    double angular_sum() const;

    // reversed factor order with negated parameters
    MapProduct inverse() const;
};

// error messages name the failing factor index
Point apply(const MapProduct& prod, Point z);

// H(z) = sum_j weights[j] * |z - centers[j]|; level sets are the invariant
// ovals of the product map with the matching parameters
struct CombinedHamiltonian {
    std::vector<Point> centers;
    std::vector<double> weights;
};

double combined_h(const CombinedHamiltonian& H, Point z);

// the combined function built from a product's own centers and arc parameters
CombinedHamiltonian hamiltonian_of(const MapProduct& prod);

// orientation-preserving isometry z -> a*z + b with |a| = 1
struct RigidMotion {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
};

struct ComposedMotion {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    // b/(1-a) when a != 1; absent for pure translations / the identity
    std::optional<Point> fixed_point;
};

inline Point apply(const RigidMotion& m, Point z) { return to_point(m.a * to_complex(z) + m.b); }

// motions applied first-to-last
ComposedMotion compose_rigid_motions(const std::vector<RigidMotion>& motions);

}  // namespace skewrot
