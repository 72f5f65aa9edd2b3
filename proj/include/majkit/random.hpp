// Deterministic random source for sampling and tests. Wraps mt19937_64 and
// derives doubles/gaussians through fixed arithmetic so that a given seed
// produces the same stream on every platform we build on.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace majkit {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1). 53 mantissa bits, independent of distribution
    // implementations in the standard library.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). n must be positive. Modulo bias is
    // irrelevant at the n values used here (single digits to a few thousand).
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Box-Muller with a cached spare; avoids std::normal_distribution whose
    // algorithm is implementation-defined.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Strictly positive draw, bounded away from zero; handy for weights.
    double positive(double lo = 0.1, double hi = 2.0) { return uniform(lo, hi); }

    std::vector<double> positives(std::size_t n, double lo = 0.1, double hi = 2.0) {
        std::vector<double> out(n);
        for (auto& v : out) v = positive(lo, hi);
        return out;
    }

    std::vector<double> gaussians(std::size_t n) {
        std::vector<double> out(n);
        for (auto& v : out) v = gaussian();
        return out;
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace majkit
