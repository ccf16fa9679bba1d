// Timing comparison of the OpenMP kernels against their serial reference
// paths.  Each kernel runs three times per mode; the best time is reported.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "skewrot/asymptotics.hpp"
#include "skewrot/exec.hpp"
#include "skewrot/geometry.hpp"
#include "skewrot/maps.hpp"
#include "skewrot/orbit.hpp"
#include "skewrot/rng.hpp"
#include "skewrot/squares.hpp"

using namespace skewrot;

namespace {

MapProduct two_center(double h1, double h2) {
    MapProduct prod;
    prod.factors = {make_rotation({-1.0, 0.0}, h1), make_rotation({1.0, 0.0}, h2)};
    return prod;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1)));
    return out;
}

double best_ms(const std::function<void()>& fn, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, const char* size, double serial_ms, double parallel_ms) {
    std::printf("%-28s %-18s %10.2f %10.2f %8.2fx\n", name, size, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main() {
    std::printf("%-28s %-18s %10s %10s %9s\n", "kernel", "size", "serial/ms", "parallel/ms",
                "speedup");

    {
        const MapProduct prod = two_center(1.0, 1.0);
        const InversePolarFrame frame{{1.0, 0.0}};
        const auto rs = geometric_grid(1e-4, 1e-2, 200);
        std::vector<double> phis;
        for (int i = 0; i < 64; ++i) phis.push_back(kTwoPi * (i + 0.5) / 64);
        const double s =
            best_ms([&] { sample_residuals(prod, frame, rs, phis, Exec::serial); });
        const double p =
            best_ms([&] { sample_residuals(prod, frame, rs, phis, Exec::parallel); });
        report("sample_residuals", "200x64 grid", s, p);
    }

    {
        const MapProduct prod = two_center(2.5, -3.0);
        const AnnulusGrid grid{{0.0, 0.0}, 2.0, 20.0, 96, 96};
        const double s =
            best_ms([&] { max_jacobian_det_error(prod, grid, 1e-6, Exec::serial); });
        const double p =
            best_ms([&] { max_jacobian_det_error(prod, grid, 1e-6, Exec::parallel); });
        report("max_jacobian_det_error", "96x96 grid", s, p);
    }

    {
        const InversePolarFrame fa{{0.0, 0.0}};
        const InversePolarFrame fb{{1.0, 0.0}};
        const auto rs = geometric_grid(1e-5, 1e-2, 4000);
        const double s = best_ms([&] { check_concordance(fa, fb, rs, 1.0, Exec::serial); });
        const double p = best_ms([&] { check_concordance(fa, fb, rs, 1.0, Exec::parallel); });
        report("check_concordance", "4000 radii", s, p);
    }

    {
        std::vector<RadialScanCase> cases;
        Rng rng(7);
        for (int i = 0; i < 16; ++i)
            cases.push_back({two_center(rng.uniform(1.0, 4.0), rng.uniform(1.0, 4.0)),
                             {rng.uniform(-3.0, 3.0), rng.uniform(2.0, 6.0)}});
        const double s = best_ms(
            [&] { radial_extent_scan_batch(cases, 20'000, {0.0, 0.0}, {}, Exec::serial); });
        const double p = best_ms(
            [&] { radial_extent_scan_batch(cases, 20'000, {0.0, 0.0}, {}, Exec::parallel); });
        report("radial_extent_scan_batch", "16x20k steps", s, p);
    }

    {
        using namespace skewrot::squares;
        std::vector<CrossValidationCase> cases;
        Rng rng(9);
        while (cases.size() < 64) {
            const long q = 3 + static_cast<long>(rng.below(10));
            const long num = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(q / 2)));
            const Rational a = Rational(num) / q;
            const long v = 1 + static_cast<long>(rng.below(12));
            const long u = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(2 * v)));
            const Rational h0 = (a + Rational(u) / v) * (rng.below(2) ? 1 : -1);
            cases.push_back({SquareConfig{a}, h0});
        }
        const double s = best_ms([&] { cross_validate_batch(cases, 40, Exec::serial); });
        const double p = best_ms([&] { cross_validate_batch(cases, 40, Exec::parallel); });
        report("cross_validate_batch", "64x40 entries", s, p);
    }

    {
        using namespace skewrot::squares;
        std::vector<ClassifyCase> cases;
        for (int j = 0; j < 32; ++j) {
            const Rational a(1, 2 + (j % 5));
            const Rational h0 = a * Rational(4 + (j % 7), 4);
            cases.push_back({SquareConfig{a}, StripState{h0, a, 0}});
        }
        const double s = best_ms([&] { classify_batch(cases, 2'000, Exec::serial); });
        const double p = best_ms([&] { classify_batch(cases, 2'000, Exec::parallel); });
        report("classify_batch", "32x2k entries", s, p);
    }

    return 0;
}
