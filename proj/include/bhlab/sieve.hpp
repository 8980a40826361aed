#pragma once

#include "bhlab/localdensity.hpp"

namespace bhlab {

struct SieveResult {
    double main_term = 0;        // |R| prod_{p<=z} (1 - rho(p)/p^dim)
    i64 exact_rough_count = 0;   // #{x in R : gcd(F(x), P(z)) = 1}
    double remainder_sum = 0;    // sum_{squarefree d<=z} |r_d|
    double z = 0;
    double prime_count_bound = 0; // C * main_term + remainder_sum
    double sieve_constant = 1.0;  // the reported C (not asserted)
};

// rho(d) = #{x mod d : F = 0}, multiplicative over the squarefree d.
i64 rho(const MatrixSpace& sp, i64 d, int threads = 1);

// Exact z-rough count over the box of height T plus the sieve main term and
// remainder sum; the unconditional pieces of the upper-bound sieve.
SieveResult rough_count(const MatrixSpace& sp, i64 T, double z, int threads = 1);

struct RemainderRow {
    i64 d = 0;
    double r_d = 0;     // exact count of F = 0 mod d minus vol * rho(d)/d^dim
    double bound = 0;   // T^{dim-1} d^{dim-1}
    double ratio = 0;   // |r_d| / bound
};

std::vector<RemainderRow> remainder_experiment(const MatrixSpace& sp, i64 T, i64 d_max,
                                               int threads = 1);

// #{x in box T : F(x) prime and F(x) <= z}
i64 small_prime_contribution(const MatrixSpace& sp, i64 T, double z, int threads = 1);

} // namespace bhlab
