#include "bhlab/zeta.hpp"

#include <cmath>

#include "bhlab/primes.hpp"

namespace bhlab {

double riemann_zeta(double s) {
    if (s <= 1.0) throw PreconditionError("riemann_zeta: need s > 1");
    const long long N = 20000;
    long double sum = 0.0L;
    for (long long n = N; n >= 1; --n) sum += powl((long double)n, (long double)-s);
    // Euler-Maclaurin correction: integral tail + endpoint + first Bernoulli term
    long double Nf = (long double)N;
    sum += powl(Nf, 1.0L - (long double)s) / ((long double)s - 1.0L);
    sum += -0.5L * powl(Nf, (long double)-s);
    sum += ((long double)s / 12.0L) * powl(Nf, (long double)-s - 1.0L);
    return (double)sum;
}

static bool is_perfect_square(i64 a) {
    if (a < 0) return false;
    i64 r = (i64)std::sqrt((double)a);
    while (r * r > a) --r;
    while ((r + 1) * (r + 1) <= a) ++r;
    return r * r == a;
}

double l_jacobi_odd(double s, i64 a, i64 cond, i64 terms) {
    if (is_perfect_square(a)) {
        // principal character: exact Euler factors over p | 2 a cond
        double v = riemann_zeta(s) * (1.0 - std::pow(2.0, -s));
        i64 m = a * (cond > 1 ? cond : 1);
        if (m == 0) m = cond > 1 ? cond : 1;
        for (auto& [p, e] : factorize(m < 0 ? -m : m))
            if (p != 2) v *= 1.0 - std::pow((double)p, -s);
        return v;
    }
    long double sum = 0.0L;
    for (i64 m = 1; m <= terms; m += 2) {
        if (cond > 1 && gcd64(m, cond) != 1) continue;
        int chi = jacobi(a, m);
        if (chi == 0) continue;
        sum += chi * powl((long double)m, (long double)-s);
    }
    return (double)sum;
}

double l_kronecker(double s, i64 a, i64 terms) {
    long double sum = 0.0L;
    for (i64 m = 1; m <= terms; ++m) {
        int chi = kronecker(a, m);
        if (chi == 0) continue;
        sum += chi * powl((long double)m, (long double)-s);
    }
    return (double)sum;
}

} // namespace bhlab
