#include "bhlab/spaces.hpp"

#include <cmath>
#include <cstdlib>

namespace bhlab {

std::vector<i64> reconstruct(const MatrixSpace& sp, const std::vector<i64>& coords) {
    int s = sp.matrix_size();
    std::vector<i64> M(s * s, 0);
    switch (sp.family) {
        case Family::Full:
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) M[i * s + j] = coords[i * s + j];
            break;
        case Family::Skew: {
            int k = 0;
            for (int i = 0; i < s; ++i)
                for (int j = i + 1; j < s; ++j) {
                    M[i * s + j] = coords[k];
                    M[j * s + i] = -coords[k];
                    ++k;
                }
            break;
        }
        case Family::Sym: {
            int k = 0;
            for (int i = 0; i < s; ++i)
                for (int j = i; j < s; ++j) {
                    M[i * s + j] = coords[k];
                    M[j * s + i] = coords[k];
                    ++k;
                }
            break;
        }
    }
    return M;
}

std::vector<double> reconstruct_real(const MatrixSpace& sp, const std::vector<double>& coords) {
    int s = sp.matrix_size();
    std::vector<double> M(s * s, 0.0);
    switch (sp.family) {
        case Family::Full:
            for (int i = 0; i < s * s; ++i) M[i] = coords[i];
            break;
        case Family::Skew: {
            int k = 0;
            for (int i = 0; i < s; ++i)
                for (int j = i + 1; j < s; ++j) {
                    M[i * s + j] = coords[k];
                    M[j * s + i] = -coords[k];
                    ++k;
                }
            break;
        }
        case Family::Sym: {
            int k = 0;
            for (int i = 0; i < s; ++i)
                for (int j = i; j < s; ++j) {
                    M[i * s + j] = coords[k];
                    M[j * s + i] = coords[k];
                    ++k;
                }
            break;
        }
    }
    return M;
}

i64 sup_norm(const IntMatrix& A) {
    i64 m = 0;
    for (i64 c : A.coords) m = std::max(m, c < 0 ? -c : c);
    return m;
}

double sup_norm_real(const std::vector<double>& coords) {
    double m = 0;
    for (double c : coords) m = std::max(m, std::fabs(c));
    return m;
}

i128 det_bareiss(std::vector<i128> M, int n) {
    if (n == 0) return 1;
    int sign = 1;
    i128 prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M[k * n + k] == 0) {
            int r = -1;
            for (int i = k + 1; i < n; ++i)
                if (M[i * n + k] != 0) {
                    r = i;
                    break;
                }
            if (r < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(M[k * n + j], M[r * n + j]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                i128 t = checked_sub(checked_mul(M[i * n + j], M[k * n + k]),
                                     checked_mul(M[i * n + k], M[k * n + j]));
                M[i * n + j] = t / prev; // exact by Bareiss
            }
        prev = M[k * n + k];
    }
    return sign > 0 ? M[(n - 1) * n + (n - 1)] : -M[(n - 1) * n + (n - 1)];
}

i128 pfaffian_expand(const std::vector<i128>& M, int n) {
    if (n == 0) return 1;
    if (n % 2 != 0) return 0;
    if (n == 2) return M[1];
    i128 acc = 0;
    for (int c = 1; c < n; ++c) {
        if (M[c] == 0) continue;
        std::vector<i128> sub((n - 2) * (n - 2));
        int ri = 0;
        for (int i = 1; i < n; ++i) {
            if (i == c) continue;
            int rj = 0;
            for (int j = 1; j < n; ++j) {
                if (j == c) continue;
                sub[ri * (n - 2) + rj] = M[i * n + j];
                ++rj;
            }
            ++ri;
        }
        i128 term = checked_mul(M[c], pfaffian_expand(sub, n - 2));
        acc = (c % 2 == 1) ? checked_add(acc, term) : checked_sub(acc, term);
    }
    return acc;
}

i128 pfaffian_eliminate(std::vector<i128> M, int n) {
    if (n == 0) return 1;
    if (n % 2 != 0) return 0;
    if (n == 2) return M[1];
    int sign = 1;
    int piv = -1;
    for (int j = 1; j < n; ++j)
        if (M[j] != 0) {
            piv = j;
            break;
        }
    if (piv < 0) return 0;
    if (piv != 1) {
        for (int j = 0; j < n; ++j) std::swap(M[1 * n + j], M[piv * n + j]);
        for (int i = 0; i < n; ++i) std::swap(M[i * n + 1], M[i * n + piv]);
        sign = -sign;
    }
    i128 a = M[1];
    int m = n - 2;
    // Schur complement against the leading 2x2 skew block, kept integral:
    // B = a*D + K with K_ij = M[1][i]M[0][j] - M[0][i]M[1][j].
    std::vector<i128> B(m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            i128 d = checked_mul(a, M[(i + 2) * n + (j + 2)]);
            i128 k = checked_sub(checked_mul(M[1 * n + (i + 2)], M[0 * n + (j + 2)]),
                                 checked_mul(M[0 * n + (i + 2)], M[1 * n + (j + 2)]));
            B[i * m + j] = checked_add(d, k);
        }
    i128 r = pfaffian_eliminate(B, m);
    // Pff(A) = sign * Pff(B) / a^(m/2 - 1)
    i128 denom = checked_pow(a, m / 2 - 1);
    if (denom != 1) {
        if (r % denom != 0) throw std::logic_error("pfaffian_eliminate: inexact division");
        r /= denom;
    }
    return sign > 0 ? r : -r;
}

i128 eval_poly_coords(const MatrixSpace& sp, const std::vector<i64>& coords) {
    int s = sp.matrix_size();
    std::vector<i64> full = reconstruct(sp, coords);
    std::vector<i128> M(full.begin(), full.end());
    if (sp.family == Family::Skew) {
        return s <= 6 ? pfaffian_expand(M, s) : pfaffian_eliminate(M, s);
    }
    return det_bareiss(std::move(M), s);
}

i128 eval_poly(const MatrixSpace& sp, const IntMatrix& A) { return eval_poly_coords(sp, A.coords); }

static double det_real(std::vector<double> M, int n) {
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(M[i * n + k]) > std::fabs(M[piv * n + k])) piv = i;
        if (M[piv * n + k] == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(M[k * n + j], M[piv * n + j]);
            det = -det;
        }
        det *= M[k * n + k];
        for (int i = k + 1; i < n; ++i) {
            double f = M[i * n + k] / M[k * n + k];
            for (int j = k; j < n; ++j) M[i * n + j] -= f * M[k * n + j];
        }
    }
    return det;
}

static double pfaffian_real(const std::vector<double>& M, int n) {
    if (n == 0) return 1.0;
    if (n == 2) return M[1];
    double acc = 0.0;
    for (int c = 1; c < n; ++c) {
        if (M[c] == 0.0) continue;
        std::vector<double> sub((n - 2) * (n - 2));
        int ri = 0;
        for (int i = 1; i < n; ++i) {
            if (i == c) continue;
            int rj = 0;
            for (int j = 1; j < n; ++j) {
                if (j == c) continue;
                sub[ri * (n - 2) + rj] = M[i * n + j];
                ++rj;
            }
            ++ri;
        }
        double term = M[c] * pfaffian_real(sub, n - 2);
        acc += (c % 2 == 1) ? term : -term;
    }
    return acc;
}

double eval_poly_real(const MatrixSpace& sp, const std::vector<double>& coords) {
    int s = sp.matrix_size();
    std::vector<double> M = reconstruct_real(sp, coords);
    if (sp.family == Family::Skew) return pfaffian_real(M, s);
    return det_real(std::move(M), s);
}

static double cofactor_real(const std::vector<double>& M, int n, int i, int j) {
    std::vector<double> sub((n - 1) * (n - 1));
    int ri = 0;
    for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        int rj = 0;
        for (int c = 0; c < n; ++c) {
            if (c == j) continue;
            sub[ri * (n - 1) + rj] = M[r * n + c];
            ++rj;
        }
        ++ri;
    }
    double minor = det_real(std::move(sub), n - 1);
    return ((i + j) % 2 == 0) ? minor : -minor;
}

static double pfaffian_minor_real(const std::vector<double>& M, int n, int i, int j) {
    std::vector<double> sub((n - 2) * (n - 2));
    int ri = 0;
    for (int r = 0; r < n; ++r) {
        if (r == i || r == j) continue;
        int rj = 0;
        for (int c = 0; c < n; ++c) {
            if (c == i || c == j) continue;
            sub[ri * (n - 2) + rj] = M[r * n + c];
            ++rj;
        }
        ++ri;
    }
    return pfaffian_real(sub, n - 2);
}

std::vector<double> gradient(const MatrixSpace& sp, const std::vector<double>& coords) {
    int s = sp.matrix_size();
    std::vector<double> M = reconstruct_real(sp, coords);
    std::vector<double> g(sp.ambient_dim());
    switch (sp.family) {
        case Family::Full: {
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) g[i * s + j] = cofactor_real(M, s, i, j);
            break;
        }
        case Family::Sym: {
            int k = 0;
            for (int i = 0; i < s; ++i)
                for (int j = i; j < s; ++j) {
                    double c = cofactor_real(M, s, i, j);
                    g[k++] = (i == j) ? c : 2.0 * c;
                }
            break;
        }
        case Family::Skew: {
            int k = 0;
            for (int i = 0; i < s; ++i)
                for (int j = i + 1; j < s; ++j) {
                    double sgn = ((i + j + 1) % 2 == 0) ? 1.0 : -1.0;
                    g[k++] = sgn * pfaffian_minor_real(M, s, i, j);
                }
            break;
        }
    }
    return g;
}

std::pair<int, int> signature(const IntMatrix& A) {
    if (A.space.family != Family::Sym) throw PreconditionError("signature: symmetric matrices only");
    int n = A.space.matrix_size();
    std::vector<i64> full = reconstruct(A.space, A.coords);
    std::vector<Rational> M(n * n);
    for (int i = 0; i < n * n; ++i) M[i] = Rational(full[i]);
    int pos = 0, neg = 0;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int piv = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && M[i * n + i].num() != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            // all remaining diagonal entries vanish; create one from an off-diagonal
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i)
                for (int j = i + 1; j < n && a < 0; ++j)
                    if (!done[i] && !done[j] && M[i * n + j].num() != 0) {
                        a = i;
                        b = j;
                    }
            if (a < 0) throw SingularMatrixError("signature: matrix is singular over Q");
            for (int j = 0; j < n; ++j) M[a * n + j] += M[b * n + j];
            for (int i = 0; i < n; ++i) M[i * n + a] += M[i * n + b];
            piv = a;
        }
        Rational d = M[piv * n + piv];
        if (Rational(0) < d) ++pos;
        else ++neg;
        done[piv] = true;
        for (int i = 0; i < n; ++i) {
            if (i == piv || done[i]) continue;
            Rational f = M[i * n + piv] / d;
            if (f.num() == 0) continue;
            for (int j = 0; j < n; ++j) M[i * n + j] -= f * M[piv * n + j];
            for (int j = 0; j < n; ++j) M[j * n + i] -= f * M[j * n + piv];
        }
    }
    return {pos, neg};
}

i128 hadamard_bound(const MatrixSpace& sp, i64 T) {
    int s = sp.matrix_size();
    int deg = sp.poly_degree();
    double c = (sp.family == Family::Skew) ? std::pow((double)s, deg / 2.0)
                                           : std::pow((double)s, s / 2.0);
    i128 coeff = (i128)std::ceil(c) + 1;
    return checked_mul(coeff, checked_pow((i128)T, deg));
}

} // namespace bhlab
