#include "bhlab/localdensity.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "bhlab/zeta.hpp"

namespace bhlab {

static i64 ipow64(i64 b, int e) {
    i64 r = 1;
    while (e--) r = r * b;
    return r;
}

static i128 ipow128(i64 b, int e) { return checked_pow((i128)b, e); }

// F on coordinates reduced mod M, exact in i128 (inputs < M <= ~2^31).
static i64 eval_mod(const MatrixSpace& sp, const std::vector<i64>& c, i64 M) {
    i128 v = eval_poly_coords(sp, c);
    i64 r = (i64)(v % (i128)M);
    if (r < 0) r += M;
    return r;
}

i64 count_mod_direct(const MatrixSpace& sp, i64 q, int k, i64 m, i64 budget) {
    int dim = sp.ambient_dim();
    i64 M = ipow64(q, k);
    double work = std::pow((double)M, dim);
    if (work > (double)budget) throw BudgetError("count_mod_direct: q^{k dim} beyond budget");
    i64 target = ((m % M) + M) % M;
    std::vector<i64> c(dim, 0);
    i64 count = 0;
    for (;;) {
        if (eval_mod(sp, c, M) == target) ++count;
        int pos = dim - 1;
        while (pos >= 0) {
            if (c[pos] < M - 1) {
                ++c[pos];
                break;
            }
            c[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return count;
}

namespace {

// Fast inline F for the shapes the density scans need, no allocation.
i128 eval_inline(const MatrixSpace& sp, const i64* c) {
    switch (sp.family) {
        case Family::Full:
            if (sp.n == 2) return (i128)c[0] * c[3] - (i128)c[1] * c[2];
            if (sp.n == 3)
                return (i128)c[0] * ((i128)c[4] * c[8] - (i128)c[5] * c[7]) -
                       (i128)c[1] * ((i128)c[3] * c[8] - (i128)c[5] * c[6]) +
                       (i128)c[2] * ((i128)c[3] * c[7] - (i128)c[4] * c[6]);
            break;
        case Family::Sym:
            if (sp.n == 2) return (i128)c[0] * c[2] - (i128)c[1] * c[1];
            if (sp.n == 3)
                return (i128)c[0] * ((i128)c[3] * c[5] - (i128)c[4] * c[4]) -
                       (i128)c[1] * ((i128)c[1] * c[5] - (i128)c[4] * c[2]) +
                       (i128)c[2] * ((i128)c[1] * c[4] - (i128)c[3] * c[2]);
            break;
        case Family::Skew:
            if (sp.n == 1) return c[0];
            if (sp.n == 2) return (i128)c[0] * c[5] - (i128)c[1] * c[4] + (i128)c[2] * c[3];
            break;
    }
    std::vector<i64> v(c, c + sp.ambient_dim());
    return eval_poly_coords(sp, v);
}

inline i64 mod_reduce(i128 v, i64 M) {
    i64 r = (i64)(v % (i128)M);
    return r < 0 ? r + M : r;
}

// Enumerate all coordinates except a trailing fiber block, handing the linear
// coefficients of F on the fiber to `emit`. For Full the fiber is the last
// row (F = sum c_j x_j, no constant term); for Skew/Sym the last coordinate
// (F = A x + B).
template <typename Emit>
void scan_prefixes(const MatrixSpace& sp, i64 M, Emit emit) {
    int dim = sp.ambient_dim();
    int s = sp.matrix_size();
    int fiber = (sp.family == Family::Full) ? s : 1;
    int pre = dim - fiber;
    std::vector<i64> c(dim, 0);
    std::vector<i64> coef(fiber, 0);
    bool full3 = (sp.family == Family::Full && sp.n == 3);
    bool full2 = (sp.family == Family::Full && sp.n == 2);
    for (;;) {
        if (sp.family == Family::Full) {
            if (full2) {
                coef[0] = mod_reduce(-(i128)c[1], M);
                coef[1] = mod_reduce((i128)c[0], M);
            } else if (full3) {
                // last-row cofactors = cross product of the first two rows
                coef[0] = mod_reduce((i128)c[1] * c[5] - (i128)c[2] * c[4], M);
                coef[1] = mod_reduce((i128)c[2] * c[3] - (i128)c[0] * c[5], M);
                coef[2] = mod_reduce((i128)c[0] * c[4] - (i128)c[1] * c[3], M);
            } else {
                for (int j = 0; j < fiber; ++j) {
                    for (int t = 0; t < fiber; ++t) c[pre + t] = (t == j) ? 1 : 0;
                    coef[j] = mod_reduce(eval_inline(sp, c.data()), M);
                }
            }
            emit(coef, (i64)0);
        } else {
            c[dim - 1] = 0;
            i64 B = mod_reduce(eval_inline(sp, c.data()), M);
            c[dim - 1] = 1;
            i64 A = mod_reduce(eval_inline(sp, c.data()) - (i128)B, M);
            coef[0] = A;
            emit(coef, B);
        }
        int pos = pre - 1;
        while (pos >= 0) {
            if (c[pos] < M - 1) {
                ++c[pos];
                break;
            }
            c[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

i64 fiber_solutions(const std::vector<i64>& coef, i64 B, i64 target, i64 M, int fiber) {
    // #{x in (Z/M)^fiber : coef . x + B = target}
    i64 rhs = ((target - B) % M + M) % M;
    i64 g = M;
    for (i64 cj : coef) g = gcd64(g, cj);
    if (g == 0) g = M;
    if (rhs % g != 0) return 0;
    i128 cnt = g;
    for (int i = 0; i < fiber - 1; ++i) cnt = checked_mul(cnt, (i128)M);
    return (i64)cnt;
}

} // namespace

LocalDensity count_mod(const MatrixSpace& sp, i64 q, int k, i64 m, int threads,
                       i64 budget, bool probe_stabilization) {
    (void)threads;
    if (!is_prime64(q)) throw PreconditionError("count_mod: q must be prime");
    if (k < 1) throw PreconditionError("count_mod: k >= 1");
    int dim = sp.ambient_dim();
    int fiber = (sp.family == Family::Full) ? sp.matrix_size() : 1;
    i64 M = ipow64(q, k);
    double work = std::pow((double)M, dim - fiber);
    if (work > (double)budget)
        throw BudgetError("count_mod: enumeration beyond budget, use smaller k");

    i64 target = ((m % M) + M) % M;
    i64 count = 0;
    scan_prefixes(sp, M, [&](const std::vector<i64>& coef, i64 B) {
        count += fiber_solutions(coef, B, target, M, fiber);
    });

    LocalDensity out;
    out.space = sp;
    out.q = q;
    out.k = k;
    out.m = m;
    out.raw_count = count;
    out.normalized = Rational((i128)count, ipow128(q, k * (dim - 1)));
    if (probe_stabilization && k >= 2) {
        LocalDensity prev = count_mod(sp, q, k - 1, m, threads, budget, false);
        out.stabilized = (out.normalized == prev.normalized);
        out.stable_k = out.stabilized ? k - 1 : -1;
    }
    return out;
}

i128 sl_count_closed_form(int n, i64 p, int k) {
    if (n < 2) throw PreconditionError("sl_count_closed_form: n >= 2");
    // p^{k(n^2-1)} prod_{j=2}^n (1 - p^-j), assembled exactly
    i128 base = ipow128(p, k * (n * n - 1));
    Rational r(base);
    for (int j = 2; j <= n; ++j) r *= Rational(checked_sub(ipow128(p, j), 1), ipow128(p, j));
    if (r.den() != 1) throw std::logic_error("sl_count_closed_form: non-integral");
    return r.num();
}

i128 skew_invertible_count(int n, i64 p) {
    if (n < 1) throw PreconditionError("skew_invertible_count: n >= 1");
    i128 r = 1;
    for (int i = 0; i <= n - 1; ++i)
        r = checked_mul(r, checked_sub(ipow128(p, 2 * n - 1), ipow128(p, 2 * i)));
    return r;
}

i128 sym_invertible_count(int n, i64 p) {
    Rational r(ipow128(p, n * (n + 1) / 2));
    for (int j = 1; j <= n; j += 2)
        r *= Rational(checked_sub(ipow128(p, j), 1), ipow128(p, j));
    if (r.den() != 1) throw std::logic_error("sym_invertible_count: non-integral");
    return r.num();
}

i128 rho_closed_form(const MatrixSpace& sp, i64 p) {
    int dim = sp.ambient_dim();
    i128 total = ipow128(p, dim);
    switch (sp.family) {
        case Family::Full: {
            i128 gl = 1;
            for (int j = 0; j < sp.n; ++j)
                gl = checked_mul(gl, checked_sub(ipow128(p, sp.n), ipow128(p, j)));
            return checked_sub(total, gl);
        }
        case Family::Skew:
            return checked_sub(total, skew_invertible_count(sp.n, p));
        case Family::Sym:
            return checked_sub(total, sym_invertible_count(sp.n, p));
    }
    return 0;
}

EquidistReport check_local_equidistribution(const MatrixSpace& sp, i64 q, int k, i64 budget) {
    int dim = sp.ambient_dim();
    i64 M = ipow64(q, k);
    double work = std::pow((double)M, dim);
    if (work > (double)budget) throw BudgetError("check_local_equidistribution: beyond budget");

    std::vector<i64> hist(M, 0);
    // Histogram of F mod M; sweep the last coordinate through its linear fiber.
    int fiber = (sp.family == Family::Full) ? sp.matrix_size() : 1;
    scan_prefixes(sp, M, [&](const std::vector<i64>& coef, i64 B) {
        if (fiber == 1) {
            i64 v = B;
            for (i64 x = 0; x < M; ++x) {
                ++hist[v];
                v += coef[0];
                if (v >= M) v -= M;
            }
        } else {
            // distribute over the value distribution of coef . x
            i64 g = M;
            for (i64 cj : coef) g = gcd64(g, cj);
            if (g == 0) g = M;
            i64 per = 1;
            for (int i = 0; i < fiber - 1; ++i) per *= M;
            per *= g;
            for (i64 v = 0; v < M; v += g) hist[(v + B) % M] += per;
        }
    });

    EquidistReport rep;
    for (i64 a = 0; a < M; ++a) rep.class_counts[a] = hist[a];
    if (sp.family == Family::Sym) {
        if (q == 2) throw UnsupportedCaseError("Sym equidistribution check needs odd q");
        i64 sq_count = -1, nsq_count = -1;
        bool ok = true;
        for (i64 a = 1; a < M; ++a) {
            if (a % q == 0) continue;
            if (legendre(a % q, q) == 1) {
                if (sq_count < 0) sq_count = hist[a];
                ok &= (hist[a] == sq_count);
            } else {
                if (nsq_count < 0) nsq_count = hist[a];
                ok &= (hist[a] == nsq_count);
            }
        }
        rep.pass = ok;
        rep.common_count = sq_count;
        rep.detail = "Sym: equality within unit square classes";
    } else {
        i64 common = -1;
        bool ok = true;
        for (i64 a = 1; a < M; ++a) {
            if (a % q == 0) continue;
            if (common < 0) common = hist[a];
            ok &= (hist[a] == common);
        }
        rep.pass = ok;
        rep.common_count = common;
        rep.detail = "all unit classes equal";
    }
    return rep;
}

static Rational series_factor(const MatrixSpace& sp, i64 p, i128 rho) {
    int dim = sp.ambient_dim();
    // (1 - p^-dim rho) / (1 - 1/p) = (p^dim - rho) / (p^{dim-1} (p-1))
    return Rational(checked_sub(ipow128(p, dim), rho),
                    checked_mul(ipow128(p, dim - 1), (i128)(p - 1)));
}

SingularSeries singular_series(const MatrixSpace& sp, i64 P, i64 brute_limit, int threads) {
    if (P > 10000) throw PreconditionError("singular_series: truncation P <= 10^4");
    SingularSeries out;
    out.space = sp;
    out.truncation = P;
    double prod = 1.0;
    for (i64 p : primes_up_to(P)) {
        i128 rho;
        if (p <= brute_limit) {
            rho = count_mod(sp, p, 1, 0, threads).raw_count;
        } else {
            rho = rho_closed_form(sp, p);
        }
        Rational f = series_factor(sp, p, rho);
        out.per_prime_factors.push_back({p, f});
        prod *= f.to_double();
    }
    out.truncated_product = prod;
    out.closed_form = singular_series_closed_form(sp);
    switch (sp.family) {
        case Family::Full: {
            std::string s = "prod_{j=2}^{n} zeta(j)^-1, n=" + std::to_string(sp.n);
            out.closed_form_symbolic = s;
            break;
        }
        case Family::Skew:
            out.closed_form_symbolic =
                "prod_{odd 3<=j<=2n-1} zeta(j)^-1, 2n=" + std::to_string(2 * sp.n);
            break;
        case Family::Sym:
            out.closed_form_symbolic =
                "prod_{odd 3<=j<=n} zeta(j)^-1, n=" + std::to_string(sp.n);
            break;
    }
    return out;
}

double singular_series_closed_form(const MatrixSpace& sp) {
    double z = 1.0;
    switch (sp.family) {
        case Family::Full:
            for (int j = 2; j <= sp.n; ++j) z /= riemann_zeta(j);
            break;
        case Family::Skew:
            for (int j = 3; j <= 2 * sp.n - 1; j += 2) z /= riemann_zeta(j);
            break;
        case Family::Sym:
            for (int j = 3; j <= sp.n; j += 2) z /= riemann_zeta(j);
            break;
    }
    return z;
}

StabilityReport stability_check(const MatrixSpace& sp, i64 p, int k, int threads, i64 budget) {
    if (p == 2) throw PreconditionError("stability_check: odd p");
    LocalDensity d = count_mod(sp, p, k, p % ipow64(p, k), threads, budget);
    StabilityReport rep;
    rep.p = p;
    rep.factor = d.normalized;
    rep.deviation = std::fabs(rep.factor.to_double() - 1.0) * std::sqrt((double)p);
    return rep;
}

std::vector<i128> int_gradient(const MatrixSpace& sp, const std::vector<i64>& coords) {
    int s = sp.matrix_size();
    std::vector<i64> full = reconstruct(sp, coords);
    std::vector<i128> g(sp.ambient_dim());

    auto minor_det = [&](int di, int dj) {
        std::vector<i128> sub((s - 1) * (s - 1));
        int ri = 0;
        for (int r = 0; r < s; ++r) {
            if (r == di) continue;
            int rj = 0;
            for (int c = 0; c < s; ++c) {
                if (c == dj) continue;
                sub[ri * (s - 1) + rj] = full[r * s + c];
                ++rj;
            }
            ++ri;
        }
        i128 d = det_bareiss(std::move(sub), s - 1);
        return ((di + dj) % 2 == 0) ? d : -d;
    };
    auto pf_minor = [&](int di, int dj) {
        std::vector<i128> sub((s - 2) * (s - 2));
        int ri = 0;
        for (int r = 0; r < s; ++r) {
            if (r == di || r == dj) continue;
            int rj = 0;
            for (int c = 0; c < s; ++c) {
                if (c == di || c == dj) continue;
                sub[ri * (s - 2) + rj] = full[r * s + c];
                ++rj;
            }
            ++ri;
        }
        return pfaffian_expand(sub, s - 2);
    };

    switch (sp.family) {
        case Family::Full:
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) g[i * s + j] = minor_det(i, j);
            break;
        case Family::Sym: {
            int k = 0;
            for (int i = 0; i < s; ++i)
                for (int j = i; j < s; ++j) {
                    i128 c = minor_det(i, j);
                    g[k++] = (i == j) ? c : checked_mul(2, c);
                }
            break;
        }
        case Family::Skew: {
            int k = 0;
            for (int i = 0; i < s; ++i)
                for (int j = i + 1; j < s; ++j) {
                    i128 v = pf_minor(i, j);
                    g[k++] = ((i + j + 1) % 2 == 0) ? v : -v;
                }
            break;
        }
    }
    return g;
}

i64 singular_locus_count(const MatrixSpace& sp, i64 p, i64 budget) {
    int dim = sp.ambient_dim();
    double work = std::pow((double)p, dim);
    if (work > (double)budget) throw BudgetError("singular_locus_count: beyond budget");
    std::vector<i64> c(dim, 0);
    i64 count = 0;
    for (;;) {
        if (eval_mod(sp, c, p) == 0) {
            bool grad_zero = true;
            for (i128 gi : int_gradient(sp, c)) {
                i128 r = gi % p;
                if (r != 0) {
                    grad_zero = false;
                    break;
                }
            }
            if (grad_zero) ++count;
        }
        int pos = dim - 1;
        while (pos >= 0) {
            if (c[pos] < p - 1) {
                ++c[pos];
                break;
            }
            c[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return count;
}

i64 rho_squarefree(const MatrixSpace& sp, i64 d, int threads, i64 brute_limit) {
    if (!is_squarefree(d)) throw PreconditionError("rho: d must be squarefree");
    i128 rho = 1;
    for (auto& [p, e] : factorize(d)) {
        i128 rp = (p <= brute_limit) ? (i128)count_mod(sp, p, 1, 0, threads).raw_count
                                     : rho_closed_form(sp, p);
        rho = checked_mul(rho, rp);
    }
    if (rho > (i128)9e18) throw OverflowError("rho(d) exceeds 64-bit range");
    return (i64)rho;
}

} // namespace bhlab
