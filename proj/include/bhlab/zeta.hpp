#pragma once

#include "bhlab/numeric.hpp"

namespace bhlab {

// Riemann zeta at real s > 1, direct sum plus Euler-Maclaurin tail; abs error < 1e-13 for s >= 2.
double riemann_zeta(double s);

// Sum over odd m >= 1 with gcd(m, cond) = 1 of jacobi(a|m) / m^s.
// This is the Euler product over p not dividing 2*cond of (1 - (a|p) p^-s)^-1,
// the local-factor product appearing in the even-n Siegel mass.
double l_jacobi_odd(double s, i64 a, i64 cond, i64 terms = 1000000);

// Full Kronecker-character L(s, (a|.)) including even m via (a|2).
double l_kronecker(double s, i64 a, i64 terms = 1000000);

} // namespace bhlab
