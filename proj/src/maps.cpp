#include "skewrot/maps.hpp"

#include <string>

namespace skewrot {

Point apply(const SkewRotation& m, Point z) {
    const Complex c = to_complex(m.center);
    const Complex d = to_complex(z) - c;
    const double rho = std::abs(d);
    if (rho < kDegenerateRadius)
        throw DegenerateCenterError("apply: point coincides with the rotation center");
    const double theta = m.signed_h() / rho;
    return to_point(c + d * std::polar(1.0, theta));
}

double MapProduct::angular_sum() const {
    double s = 0.0;
    for (const auto& f : factors) s += f.signed_h();
    return s;
}

MapProduct MapProduct::inverse() const {
    MapProduct inv;
    inv.factors.reserve(factors.size());
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        SkewRotation f = *it;
        f.h = -f.h;
        inv.factors.push_back(f);
    }
    return inv;
}

Point apply(const MapProduct& prod, Point z) {
    Point w = z;
    for (std::size_t i = 0; i < prod.factors.size(); ++i) {
        try {
            w = apply(prod.factors[i], w);
        } catch (const DegenerateCenterError&) {
            throw DegenerateCenterError("apply: factor " + std::to_string(i) +
                                        " hit its rotation center");
        }
    }
    return w;
}

double combined_h(const CombinedHamiltonian& H, Point z) {
    double s = 0.0;
    for (std::size_t j = 0; j < H.centers.size(); ++j)
        s += H.weights[j] * dist(z, H.centers[j]);
    return s;
}

CombinedHamiltonian hamiltonian_of(const MapProduct& prod) {
    CombinedHamiltonian H;
    H.centers.reserve(prod.factors.size());
    H.weights.reserve(prod.factors.size());
    for (const auto& m : prod.factors) {
        H.centers.push_back(m.center);
        H.weights.push_back(m.signed_h());
    }
    return H;
}

ComposedMotion compose_rigid_motions(const std::vector<RigidMotion>& motions) {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    for (const auto& m : motions) {
        // applying (a, b) then (m.a, m.b): z -> m.a*(a*z + b) + m.b
        b = m.a * b + m.b;
        a = m.a * a;
    }
    ComposedMotion out{a, b, std::nullopt};
    if (a != Complex{1.0, 0.0}) {
        const Complex fp = b / (Complex{1.0, 0.0} - a);
        out.fixed_point = to_point(fp);
    }
    return out;
}

}  // namespace skewrot
