#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "skewrot/errors.hpp"
#include "skewrot/geometry.hpp"
#include "skewrot/maps.hpp"
#include "skewrot/orbit.hpp"
#include "skewrot/rng.hpp"

using namespace skewrot;

namespace {

MapProduct two_center(double h1, double h2) {
    MapProduct prod;
    prod.factors = {make_rotation({-1.0, 0.0}, h1), make_rotation({1.0, 0.0}, h2)};
    return prod;
}

}  // namespace

TEST_CASE("a one-step orbit is one application of the product") {
    const MapProduct prod = two_center(2.5, -3.0);
    const Point z0{3.0, 5.0};
    const OrbitTrace trace = iterate_orbit(prod, z0, 1);
    REQUIRE(trace.n() == 1);
    const Point direct = apply(prod, z0);
    CHECK(trace.full_steps[0].x == direct.x);
    CHECK(trace.full_steps[0].y == direct.y);
    CHECK(trace.initial.x == z0.x);
    CHECK(!trace.has_half_steps);
}

TEST_CASE("orbit entries repeat the iterated map bitwise") {
    const MapProduct prod = two_center(3.8, 3.8);
    const Point z0{0.0, 2.419};
    const OrbitTrace trace = iterate_orbit(prod, z0, 50);
    Point z = z0;
    for (std::size_t k = 0; k < trace.n(); ++k) {
        z = apply(prod, z);
        CHECK(trace.full_steps[k].x == z.x);
        CHECK(trace.full_steps[k].y == z.y);
    }
}

TEST_CASE("recorded half steps end each step at the full step") {
    const MapProduct prod = two_center(2.5, 0.25);
    const OrbitTrace trace = iterate_orbit(prod, {1.6, 0.0}, 25, true);
    REQUIRE(trace.has_half_steps);
    REQUIRE(trace.half_steps.size() == 2 * trace.n());
    for (std::size_t k = 0; k < trace.n(); ++k) {
        const Point& last = trace.half_steps[2 * k + 1];
        CHECK(last.x == trace.full_steps[k].x);
        CHECK(last.y == trace.full_steps[k].y);
        // the intermediate image is the first factor applied alone
        const Point mid = apply(prod.factors[0], k == 0 ? trace.initial : trace.full_steps[k - 1]);
        CHECK(trace.half_steps[2 * k].x == mid.x);
        CHECK(trace.half_steps[2 * k].y == mid.y);
    }
}

TEST_CASE("running the inverse product backwards returns home") {
    const MapProduct prod = two_center(1.3, -0.7);
    const Point z0{2.0, 1.0};
    const OrbitTrace fwd = iterate_orbit(prod, z0, 200);
    const OrbitTrace bwd = iterate_orbit(prod.inverse(), fwd.full_steps.back(), 200);
    CHECK(dist(bwd.full_steps.back(), z0) <= 1e-9);
}

TEST_CASE("radial bounds cover the initial point and are tight") {
    const MapProduct prod = two_center(3.8, 3.8);
    const Point z0{0.0, 2.419};
    const Point center{0.0, 0.0};
    const OrbitTrace trace = iterate_orbit(prod, z0, 500);
    const AnnulusEstimate est = radial_bounds(trace, center);
    double lo = dist(z0, center), hi = lo;
    for (const Point& p : trace.full_steps) {
        lo = std::min(lo, dist(p, center));
        hi = std::max(hi, dist(p, center));
    }
    CHECK(est.rho_min == lo);
    CHECK(est.rho_max == hi);
    CHECK(est.rho_min <= est.rho_max);
}

TEST_CASE("streaming radial scans match stored traces") {
    const MapProduct prod = two_center(3.8, 3.8);
    const Point z0{0.0, 2.419};
    const Point center{0.0, 0.0};
    const RadialScan scan = radial_extent_scan(prod, z0, 400, center, {100, 400});
    const AnnulusEstimate est = radial_bounds(iterate_orbit(prod, z0, 400), center);
    CHECK(scan.rho_min == est.rho_min);
    CHECK(scan.rho_max == est.rho_max);
    REQUIRE(scan.checkpoint_rho_max.size() == 2);
    CHECK(scan.checkpoint_rho_max[0] <= scan.checkpoint_rho_max[1]);
    CHECK(scan.checkpoint_rho_max[1] == scan.rho_max);
}

TEST_CASE("batched radial scans equal the single-case scan") {
    const Point center{0.0, 0.0};
    std::vector<RadialScanCase> cases = {{two_center(3.8, 3.8), {0.0, 2.419}},
                                         {two_center(2.5, -3.0), {3.0, 5.0}},
                                         {two_center(1.5, 2.0), {0.0, 4.0}}};
    const auto batch = radial_extent_scan_batch(cases, 300, center, {150}, Exec::serial);
    REQUIRE(batch.size() == cases.size());
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const RadialScan one = radial_extent_scan(cases[i].prod, cases[i].z0, 300, center, {150});
        CHECK(batch[i].rho_min == one.rho_min);
        CHECK(batch[i].rho_max == one.rho_max);
        CHECK(batch[i].checkpoint_rho_max == one.checkpoint_rho_max);
    }
}

TEST_CASE("confined orbits stop growing radially") {
    // nonzero angular sum keeps the orbit in an annulus; the running maximum
    // saturates well before the run ends
    const RadialScan scan =
        radial_extent_scan(two_center(3.8, 3.8), {0.0, 2.419}, 10'000, {0.0, 0.0}, {1'000});
    CHECK(scan.rho_max / scan.checkpoint_rho_max[0] - 1.0 < 0.10);
    CHECK(scan.rho_max < 10.0);
}

TEST_CASE("rotation numbers match the twist at the orbit radius") {
    // one centered rotation advances the angle by exactly h/rho each step
    MapProduct prod;
    prod.factors = {make_rotation({0.0, 0.0}, 1.2)};
    const OrbitTrace trace = iterate_orbit(prod, {4.0, 0.0}, 400);
    const RotationNumberEstimate est = rotation_number(trace, {0.0, 0.0});
    CHECK(est.value == doctest::Approx(1.2 / 4.0).epsilon(1e-10));
    CHECK(est.stderr_ <= 1e-10);
    CHECK(est.n_steps == 400);
}

TEST_CASE("rotation numbers reject short or escaping data") {
    MapProduct prod;
    prod.factors = {make_rotation({0.0, 0.0}, 1.2)};
    const OrbitTrace trace = iterate_orbit(prod, {4.0, 0.0}, 50);
    CHECK_THROWS_AS(rotation_number(trace, {0.0, 0.0}), InsufficientDataError);

    const MapProduct esc = two_center(2.0, -2.0);
    const OrbitTrace out = iterate_orbit(esc, escape_seed(2.0, 2.0), 400);
    CHECK_THROWS_AS(rotation_number(out, {0.0, 0.0}), UnboundedOrbitError);
}

TEST_CASE("escape seeds start at the requested radius") {
    for (const double rho0 : {2.0, 5.0, 11.0}) {
        const Point seed = escape_seed(2.0, rho0);
        CHECK(dist(seed, {-1.0, 0.0}) == doctest::Approx(rho0).epsilon(1e-12));
        // half of the first arc about (-1, 0) lands on the vertical axis
        const Point mid = apply(make_rotation({-1.0, 0.0}, 1.0), seed);
        CHECK(std::abs(mid.x) <= 1e-9);
    }
    CHECK_THROWS_AS(escape_seed(2.0, 0.5), NonPositiveRadiusError);
}

TEST_CASE("the zero-sum pair drives its seed outward monotonically") {
    const MapProduct prod = two_center(2.0, -2.0);
    const Point z0 = escape_seed(2.0, 5.0);
    const Separatrix sep{};  // vertical axis
    const EscapeReport rep = run_escape(prod, z0, 100'000, 50.0, sep);
    CHECK(rep.escaped);
    REQUIRE(rep.first_exit_step.has_value());
    CHECK(rep.monotone_fraction == 1.0);
    REQUIRE(rep.axis_crossings.size() >= 3);
    for (std::size_t i = 1; i < rep.axis_crossings.size(); ++i)
        CHECK(rep.axis_crossings[i].second > rep.axis_crossings[i - 1].second);
    // the first crossing ordinate is near the seed radius
    CHECK(rep.axis_crossings.front().second == doctest::Approx(5.0).epsilon(0.05));
}

TEST_CASE("stored-trace and streaming escape reports agree") {
    const MapProduct prod = two_center(2.0, -2.0);
    const Point z0 = escape_seed(2.0, 3.0);
    const Separatrix sep{};
    const EscapeReport streamed = run_escape(prod, z0, 20'000, 30.0, sep);
    REQUIRE(streamed.escaped);
    const OrbitTrace trace = iterate_orbit(prod, z0, *streamed.first_exit_step, true);
    const EscapeReport stored = detect_escape(trace, 30.0, sep);
    CHECK(stored.escaped);
    CHECK(*stored.first_exit_step == *streamed.first_exit_step);
    REQUIRE(stored.axis_crossings.size() == streamed.axis_crossings.size());
    for (std::size_t i = 0; i < stored.axis_crossings.size(); ++i) {
        CHECK(stored.axis_crossings[i].first == streamed.axis_crossings[i].first);
        CHECK(stored.axis_crossings[i].second ==
              doctest::Approx(streamed.axis_crossings[i].second).epsilon(1e-12));
    }
    CHECK(stored.monotone_fraction == streamed.monotone_fraction);
}

TEST_CASE("orbits that never meet the separatrix are reported") {
    MapProduct prod;
    prod.factors = {make_rotation({5.0, 0.0}, 0.7)};
    const OrbitTrace trace = iterate_orbit(prod, {6.0, 0.0}, 300, true);
    CHECK_THROWS_AS(detect_escape(trace, 1e6, Separatrix{}), NoCrossingsError);
}

TEST_CASE("hyperbola separatrix crossings are tracked") {
    const MapProduct prod = two_center(2.0, -2.0);
    const Point z0 = escape_seed(2.0, 4.0);
    Separatrix sep;
    sep.kind = Separatrix::Kind::hyperbola;
    sep.c = 0.0;
    sep.f1 = {-1.0, 0.0};
    sep.f2 = {1.0, 0.0};
    const EscapeReport rep = run_escape(prod, z0, 50'000, 40.0, sep);
    CHECK(rep.escaped);
    CHECK(rep.axis_crossings.size() >= 3);
    CHECK(rep.monotone_fraction == 1.0);
}

TEST_CASE("level sweeps need recorded half steps") {
    const MapProduct prod = two_center(2.5, -3.0);
    const OrbitTrace bare = iterate_orbit(prod, {3.0, 5.0}, 50);
    CHECK_THROWS_AS(oval_side_sequence(bare, hamiltonian_of(prod), std::nullopt),
                    std::invalid_argument);
}

TEST_CASE("levels outside the swept band are never crossed") {
    const MapProduct prod = two_center(2.5, -3.0);
    const OrbitTrace trace = iterate_orbit(prod, {3.0, 5.0}, 200, true);
    const CombinedHamiltonian H = hamiltonian_of(prod);
    // far below every observed value of the combined function
    const SideSequenceReport rep = oval_side_sequence(trace, H, -1e6);
    CHECK(rep.alternation_fraction == 0.0);
    CHECK(rep.c == -1e6);
    REQUIRE(rep.sides.size() == 1 + trace.half_steps.size());
    for (const int s : rep.sides) CHECK(s == 1);
}

TEST_CASE("orbit paths straddle one level of the combined function") {
    // both parameter families: opposite-sign and mixed-sign weights
    struct Case {
        double h1, h2;
        Point z0;
    };
    for (const Case& c : {Case{-3.0, 2.5}, Case{2.5, 0.25}}) {
        // z0 per family
        const Point z0 = c.h2 == 2.5 ? Point{3.0, 5.0} : Point{1.6, 0.0};
        const MapProduct prod = two_center(c.h1, c.h2);
        const OrbitTrace trace = iterate_orbit(prod, z0, 2'000, true);
        const SideSequenceReport rep = oval_side_sequence(trace, hamiltonian_of(prod), std::nullopt);
        CAPTURE(c.h1);
        CHECK(rep.alternation_fraction >= 0.99);
        CHECK(rep.n_pairs == 2'000);
        // the chosen level sits inside the observed range of the function
        bool above = false, below = false;
        for (const int s : rep.sides) {
            above = above || s > 0;
            below = below || s < 0;
        }
        CHECK(above);
        CHECK(below);
    }
}

TEST_CASE("orbit traces never lose points") {
    Rng rng(77);
    for (int rep = 0; rep < 5; ++rep) {
        const MapProduct prod = two_center(rng.uniform(0.5, 3.0), rng.uniform(-3.0, 3.0));
        const std::size_t n = 17 + rng.below(40);
        const OrbitTrace tr = iterate_orbit(prod, {rng.uniform(2.0, 6.0), rng.uniform(2.0, 6.0)},
                                            n, rng.below(2) == 1);
        CHECK(tr.n() == n);
        if (tr.has_half_steps) CHECK(tr.half_steps.size() == prod.factors.size() * n);
        CHECK(tr.product.factors.size() == prod.factors.size());
    }
}
