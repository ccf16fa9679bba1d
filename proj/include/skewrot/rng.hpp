#pragma once

#include <cstdint>
#include <random>

namespace skewrot {

// Deterministic random source: std::mt19937_64 (algorithm fixed by the
// standard) with an explicit bits-to-double mapping, so a given seed yields
// the same stream on every platform.  Distribution adapters from <random> are
// implementation-defined and deliberately avoided.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    // uniform in [0, 1) with 53-bit resolution
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * unit(); }

    // uniform integer in [0, n), n > 0, via rejection of the biased tail
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace skewrot
