#pragma once

#include <cstdint>
#include <vector>

#include "bhlab/numeric.hpp"

namespace bhlab {

// Bit sieve of odd numbers up to `limit` inclusive; ~limit/16 bytes.
class PrimeTable {
public:
    explicit PrimeTable(i64 limit);

    bool is_prime(i64 n) const;
    i64 limit() const { return limit_; }

private:
    i64 limit_;
    std::vector<u64> bits_; // bit i set <=> 2i+1 composite
};

// Deterministic Miller-Rabin, correct for all n < 2^63.
bool is_prime64(i64 n);

std::vector<i64> primes_up_to(i64 n);

// Trial-division factorization, intended for m <= 10^12.
std::vector<std::pair<i64, int>> factorize(i64 m);

bool is_squarefree(i64 d);

// Jacobi symbol (a|n) for odd n > 0.
int jacobi(i64 a, i64 n);

// Kronecker symbol (a|n) for any n (including even and negative).
int kronecker(i64 a, i64 n);

inline int legendre(i64 a, i64 p) { return jacobi(a, p); }

inline i64 gcd64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Solution count of A*x = B mod m over one variable x in Z/m.
inline i64 linear_congruence_count(i64 A, i64 B, i64 m) {
    A %= m;
    if (A < 0) A += m;
    B %= m;
    if (B < 0) B += m;
    i64 g = gcd64(A == 0 ? m : A, m);
    return (B % g == 0) ? g : 0;
}

} // namespace bhlab
