#pragma once

#include <map>
#include <optional>

#include "bhlab/primes.hpp"
#include "bhlab/region.hpp"

namespace bhlab {

struct CountResult {
    i64 total = 0;
    std::map<i64, i64> by_value;
    double wall_time = 0;
    int thread_count = 1;
};

// Counts of every F-value over the integer box ||A|| <= T. Deterministic
// ordered merge over coordinate chunks; identical for any thread count.
struct ValueHistogram {
    i64 max_abs = 0;
    std::vector<i64> counts; // index v + max_abs

    i64 get(i64 v) const {
        if (v < -max_abs || v > max_abs) return 0;
        return counts[v + max_abs];
    }
    i64 total() const {
        i64 s = 0;
        for (i64 c : counts) s += c;
        return s;
    }
};

ValueHistogram value_histogram(const MatrixSpace& sp, i64 T, int threads);

struct Progression {
    i64 a, q;
};

CountResult count_primes(const MatrixSpace& sp, const Region& region, int threads,
                         std::optional<Progression> progression = std::nullopt);

i64 count_level_set(const MatrixSpace& sp, i64 m, const Region& region, int threads);

// Multiplicative Hecke factor G_n(m) from the prime factorization of m.
i128 hecke_G(int n, i64 m);

// Sarnak main term: prod_{j=2}^n zeta(j)^{-1} * G_n(m) * mu(Omega).
double hecke_prediction(int n, i64 m, double mu_omega);

} // namespace bhlab
