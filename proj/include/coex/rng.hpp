#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "coex/errors.hpp"

namespace coex {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

// Seeded random stream addressed by (root seed, stage name, index).
//
// Streams for distinct names or indices are statistically independent, so
// adding draws to one sampling stage never perturbs another.  Distributions
// are implemented here rather than taken from <random> so that sequences are
// identical across standard libraries.
class RngStream {
  public:
    RngStream(std::uint64_t root_seed, std::string_view name, std::uint64_t index = 0)
        : engine_(detail::splitmix64(detail::splitmix64(root_seed ^ detail::fnv1a64(name)) +
                                     index)) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform over {0, ..., n-1}, rejection-free modulo bias fix
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) throw ParameterError("uniform_int: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // unit-mean exponential
    double exponential() { return -std::log1p(-uniform()); }

    std::uint64_t poisson(double mean) {
        if (mean < 0.0) throw ParameterError("poisson: mean must be >= 0");
        if (mean == 0.0) return 0;
        return mean < 12.0 ? poisson_small(mean) : poisson_ptrs(mean);
    }

  private:
    // Knuth's sequential method.
    std::uint64_t poisson_small(double mean) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    // Hormann's transformed rejection (PTRS), exact for large means.
    std::uint64_t poisson_ptrs(double mean) {
        const double b = 0.931 + 2.53 * std::sqrt(mean);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mean = std::log(mean);
        for (;;) {
            const double u = uniform() - 0.5;
            const double v = uniform();
            const double us = 0.5 - std::fabs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
                kf * log_mean - mean - std::lgamma(kf + 1.0)) {
                return static_cast<std::uint64_t>(kf);
            }
        }
    }

    std::mt19937_64 engine_;
};

}  // namespace coex
