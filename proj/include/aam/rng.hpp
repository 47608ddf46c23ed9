#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "aam/hash.hpp"

namespace aam {

// Deterministic random stream. mt19937_64 is fully specified by the
// standard; the distribution mappings live here because the std
// distributions are implementation-defined and would break bit-identical
// replays across toolchains.
class RngStream {
public:
    explicit RngStream(uint64_t seed) : eng_(seed) {}

    // Independent per-purpose substream: seed mixed with a label hash, so
    // draw order in one stream never disturbs another.
    static RngStream labeled(uint64_t seed, std::string_view label) {
        HashWriter w;
        w.write_u64(seed);
        w.write(label);
        return RngStream(w.finish().to_u64());
    }

    uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform in [0, n) by 128-bit multiply; bias ~n/2^64.
    uint64_t bounded(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<__uint128_t>(eng_()) * n) >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Box-Muller; one spare cached per stream.
    double normal(double sigma = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_ * sigma;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a) * sigma;
    }

    // Mean-mu exponential variate (for mining-delay models).
    double exponential(double mean) {
        double u;
        do {
            u = uniform01();
        } while (u <= 0.0);
        return -mean * std::log(u);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0;
};

}  // namespace aam
