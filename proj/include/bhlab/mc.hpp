#pragma once

#include <cmath>

#include "bhlab/numeric.hpp"

namespace bhlab {

// SplitMix64; substreams are derived from the master seed by a fixed counter
// scheme so results are bit-identical for any thread layout.
struct Rng {
    u64 state;

    explicit Rng(u64 seed) : state(seed) {}

    u64 next() {
        state += 0x9E3779B97F4A7C15ull;
        u64 z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return (double)(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    i64 below(i64 n) { return (i64)(next() % (u64)n); }

    static Rng substream(u64 master, u64 index) {
        Rng r(master ^ (0xD1B54A32D192ED03ull * (index + 1)));
        r.next();
        return r;
    }
};

struct McEstimate {
    double value = 0;
    double stderr_ = 0;
    i64 samples = 0;
    u64 seed = 0;
};

inline double logplus_inv(double y) {
    if (y <= 0) return 0.0;
    double l = std::log(y);
    return 1.0 / std::max(2.0, l);
}

} // namespace bhlab
