#pragma once

#include <map>
#include <string>

#include "bhlab/enumerate.hpp"

namespace bhlab {

struct LocalDensity {
    MatrixSpace space;
    i64 q = 0;
    int k = 1;
    i64 m = 0;
    i64 raw_count = 0;
    Rational normalized;       // raw_count / q^{k(dim-1)}
    bool stabilized = false;   // density at k equals density at k-1
    int stable_k = -1;
};

// Exact #{x mod q^k : F(x) = m}. Enumerates the free coordinates directly,
// except that the final coordinate block (the last row for Full, the last
// coordinate for Skew/Sym, where F is linear) is counted by the exact
// solution count of the induced linear congruence.
LocalDensity count_mod(const MatrixSpace& sp, i64 q, int k, i64 m, int threads = 1,
                       i64 budget = 2000000000LL, bool probe_stabilization = false);

// Same count by fully direct enumeration of every coordinate; the
// cross-validation oracle for count_mod.
i64 count_mod_direct(const MatrixSpace& sp, i64 q, int k, i64 m, i64 budget = 200000000LL);

// #SL_n(Z/p^k) = p^{k(n^2-1)} prod_{j=2}^n (1 - p^-j)
i128 sl_count_closed_form(int n, i64 p, int k);

// MacWilliams: #{X in Skew_2n(F_p) : det != 0} = prod_{i=0}^{n-1}(p^{2n-1} - p^{2i})
i128 skew_invertible_count(int n, i64 p);

// #{S in Sym_n(F_p) : det != 0} = p^{n(n+1)/2} prod_{odd j<=n}(1 - p^-j)
i128 sym_invertible_count(int n, i64 p);

// #{x in F_p^dim : F(x) = 0} via closed forms (the fast path under test).
i128 rho_closed_form(const MatrixSpace& sp, i64 p);

struct EquidistReport {
    bool pass = false;
    std::map<i64, i64> class_counts; // residue class -> count
    i64 common_count = 0;            // Full/Skew: the shared unit-class count
    std::string detail;
};

// Full/Skew: every unit class mod q^k has the same count. Sym: equality is
// asserted only within square classes of units.
EquidistReport check_local_equidistribution(const MatrixSpace& sp, i64 q, int k,
                                            i64 budget = 2000000000LL);

struct SingularSeries {
    MatrixSpace space;
    i64 truncation = 0;
    std::vector<std::pair<i64, Rational>> per_prime_factors;
    double truncated_product = 0;
    double closed_form = 0;
    std::string closed_form_symbolic;
};

// Euler product of (1 - p^-dim rho(p)) / (1 - 1/p) for p <= P; factors
// brute-forced up to brute_limit, closed-form beyond.
SingularSeries singular_series(const MatrixSpace& sp, i64 P, i64 brute_limit = 31,
                               int threads = 1);

double singular_series_closed_form(const MatrixSpace& sp);

struct StabilityReport {
    i64 p = 0;
    Rational factor;     // density of F = p mod p^2, normalized
    double deviation =0; // |factor - 1| * sqrt(p)
};

StabilityReport stability_check(const MatrixSpace& sp, i64 p, int k = 2, int threads = 1,
                                i64 budget = 2000000000LL);

// #{v mod p : F(v) = 0 and grad F(v) = 0}
i64 singular_locus_count(const MatrixSpace& sp, i64 p, i64 budget = 200000000LL);

std::vector<i128> int_gradient(const MatrixSpace& sp, const std::vector<i64>& coords);

// rho(d) = #{x mod d : F = 0} for squarefree d, assembled by CRT.
i64 rho_squarefree(const MatrixSpace& sp, i64 d, int threads = 1, i64 brute_limit = 64);

} // namespace bhlab
