#include <algorithm>
#include <cmath>

#include "bhlab/siegel.hpp"
#include "bhlab/spaces.hpp"
#include "bhlab/zeta.hpp"

namespace bhlab {

i128 sym_det(const SymMat& S, int n) {
    std::vector<i128> M(S.begin(), S.end());
    return det_bareiss(std::move(M), n);
}

bool is_positive_definite(const SymMat& S, int n) {
    for (int k = 1; k <= n; ++k) {
        std::vector<i128> M(k * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) M[i * k + j] = S[i * n + j];
        if (det_bareiss(std::move(M), k) <= 0) return false;
    }
    return true;
}

namespace {

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e--) r *= b;
    return r;
}

i64 modmul(i64 a, i64 b, i64 m) { return (i64)((i128)a * b % m); }

i64 modinv(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
    while (a1) {
        i64 q = g / a1;
        g -= q * a1;
        std::swap(g, a1);
        x -= q * x1;
        std::swap(x, x1);
    }
    if (g != 1) throw PreconditionError("modinv: not invertible");
    return ((x % m) + m) % m;
}

int val_of(i64 x, i64 p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (x % p == 0 && v < cap) x /= p, ++v;
    return v;
}

int vp_of_i128(i128 x, i64 p) {
    if (x == 0) throw SingularMatrixError("p-adic valuation of 0");
    if (x < 0) x = -x;
    int v = 0;
    while (x % p == 0) x /= p, ++v;
    return v;
}

struct ModMatrix {
    int n;
    i64 P;
    std::vector<i64> a;

    i64& at(int i, int j) { return a[i * n + j]; }
    i64 at(int i, int j) const { return a[i * n + j]; }

    void addmul_col(int dst, int src, i64 f) { // col_dst += f * col_src
        for (int r = 0; r < n; ++r) at(r, dst) = (at(r, dst) + modmul(f, at(r, src), P)) % P;
    }
    void addmul_row(int dst, int src, i64 f) {
        for (int c = 0; c < n; ++c) at(dst, c) = (at(dst, c) + modmul(f, at(src, c), P)) % P;
    }
    void swap_rc(int i, int j) {
        for (int c = 0; c < n; ++c) std::swap(at(i, c), at(j, c));
        for (int r = 0; r < n; ++r) std::swap(at(r, i), at(r, j));
    }
};

} // namespace

JordanSymbolOdd jordan_decompose_odd(const SymMat& S, int n, i64 p) {
    if (p == 2 || !is_prime64(p)) throw PreconditionError("jordan_decompose_odd: odd prime p");
    i128 det = sym_det(S, n);
    if (det == 0) throw SingularMatrixError("jordan_decompose_odd: singular matrix");
    int v = vp_of_i128(det, p);
    int N = v + 4;
    i64 P = ipow(p, N);

    ModMatrix A{n, P, std::vector<i64>(n * n)};
    for (int i = 0; i < n * n; ++i) A.a[i] = ((S[i] % P) + P) % P;
    ModMatrix G{n, P, std::vector<i64>(n * n, 0)};
    for (int i = 0; i < n; ++i) G.at(i, i) = 1;

    std::vector<std::pair<int, i64>> diag; // (scale, unit mod P)
    for (int pos = 0; pos < n; ++pos) {
        int best_i = -1, best_j = -1, best_v = N + 1;
        for (int i = pos; i < n; ++i)
            for (int j = i; j < n; ++j) {
                int vv = val_of(A.at(i, j), p, N);
                bool better = vv < best_v || (vv == best_v && best_i != best_j && i == j);
                if (better) {
                    best_v = vv;
                    best_i = i;
                    best_j = j;
                }
            }
        if (best_v >= N) throw PrecisionError("jordan_decompose_odd: precision exhausted");
        if (best_i != best_j) {
            // move the minimal valuation onto the diagonal; one sign works for odd p
            for (i64 f : {(i64)1, P - 1}) {
                ModMatrix trial = A;
                trial.addmul_col(best_i, best_j, f);
                trial.addmul_row(best_i, best_j, f);
                if (val_of(trial.at(best_i, best_i), p, N) == best_v) {
                    A = trial;
                    G.addmul_col(best_i, best_j, f);
                    break;
                }
            }
            if (val_of(A.at(best_i, best_i), p, N) != best_v)
                throw PrecisionError("jordan_decompose_odd: pivot creation failed");
        }
        if (best_i != pos) {
            A.swap_rc(best_i, pos);
            for (int r = 0; r < n; ++r) std::swap(G.at(r, best_i), G.at(r, pos));
        }
        i64 u = A.at(pos, pos);
        int k = val_of(u, p, N);
        i64 pk = ipow(p, k);
        i64 w = (u / pk) % P;
        i64 winv = modinv(w, P);
        for (int r = pos + 1; r < n; ++r) {
            i64 t = A.at(r, pos);
            if (t == 0) continue;
            i64 f = (P - modmul((t / pk) % P, winv, P)) % P;
            A.addmul_col(r, pos, f);
            A.addmul_row(r, pos, f);
            G.addmul_col(r, pos, f);
        }
        diag.push_back({k, w % P});
    }

    // verification: G^t S G must be diagonal with the recorded scales, mod p^{N-v}
    {
        i64 Q = ipow(p, N - v);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                i128 acc = 0;
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c)
                        acc += (i128)G.at(r, i) % Q * (((S[r * n + c] % Q) + Q) % Q) % Q *
                               (G.at(c, j) % Q);
                i64 got = (i64)(((acc % Q) + Q) % Q);
                i64 want = (i == j) ? (modmul(ipow(p, diag[i].first), diag[i].second, Q)) % Q : 0;
                if (got % Q != want % Q)
                    throw std::logic_error("jordan_decompose_odd: transform verification failed");
            }
    }

    std::map<int, std::pair<int, i64>> grouped; // scale -> (dim, unit product mod p)
    for (auto& [k, w] : diag) {
        auto& g = grouped[k];
        g.first += 1;
        g.second = g.second == 0 ? (w % p) : modmul(g.second, w, p);
    }
    JordanSymbolOdd sym;
    sym.p = p;
    for (auto& [k, g] : grouped) {
        OddJordanBlock b;
        b.scale = k;
        b.dim = g.first;
        b.det_class = legendre(g.second, p);
        sym.blocks.push_back(b);
    }
    return sym;
}

namespace {

struct Piece2 {
    int scale;
    int dim;              // 1 or 2
    i64 unit;             // dim 1: diagonal unit; dim 2: det of the unit block (mod 256)
    i64 a = 0, b = 0, c = 0; // dim 2 unit block entries (mod 256), diag even, b odd
};

// Split a same-scale mix <u> + [[a,b],[b,c]] (a, c even, b odd) into three
// odd units: pivot a+u, then the surviving odd diagonal, then the quotient.
void split_mixed(i64 u, i64 a, i64 b, i64 c, i64 K, std::vector<i64>& out) {
    i64 s1 = (a + u) % K;
    i64 inv1 = modinv(s1, K);
    i64 g00 = modmul(modmul(u, a, K), inv1, K);                    // u a/(a+u)
    i64 g01 = (K - modmul(modmul(u, b, K), inv1, K)) % K;          // -u b/(a+u)
    i64 g11 = (c - modmul(modmul(b, b, K), inv1, K) % K + K) % K;  // c - b^2/(a+u)
    i64 s2 = g11;
    i64 inv2 = modinv(s2, K);
    i64 s3 = (g00 - modmul(modmul(g01, g01, K), inv2, K) % K + 2 * K) % K;
    out.push_back(s1 % K);
    out.push_back(s2 % K);
    out.push_back(s3 % K);
}

} // namespace

JordanSymbol2 jordan_decompose_2(const SymMat& S, int n) {
    i128 det = sym_det(S, n);
    if (det == 0) throw SingularMatrixError("jordan_decompose_2: singular matrix");
    int v = vp_of_i128(2 * det, 2);
    int N = v + 8;
    i64 P = (i64)1 << N;

    ModMatrix A{n, P, std::vector<i64>(n * n)};
    for (int i = 0; i < n * n; ++i) A.a[i] = ((S[i] % P) + P) % P;

    std::vector<Piece2> pieces;
    std::vector<int> act(n);
    for (int i = 0; i < n; ++i) act[i] = i;

    while (!act.empty()) {
        int best_v = N + 1;
        int di = -1;          // diagonal pivot index into act
        int oi = -1, oj = -1; // off-diagonal pivot
        for (size_t x = 0; x < act.size(); ++x)
            for (size_t y = x; y < act.size(); ++y) {
                int vv = val_of(A.at(act[x], act[y]), 2, N);
                if (vv < best_v) {
                    best_v = vv;
                    if (x == y) {
                        di = (int)x;
                        oi = oj = -1;
                    } else {
                        di = -1;
                        oi = (int)x;
                        oj = (int)y;
                    }
                } else if (vv == best_v && di < 0 && x == y) {
                    di = (int)x;
                    oi = oj = -1;
                }
            }
        if (best_v >= N) throw PrecisionError("jordan_decompose_2: precision exhausted");
        i64 pk = (i64)1 << best_v;
        if (di >= 0) {
            int i = act[di];
            i64 u = A.at(i, i);
            i64 w = (u / pk) % 256;
            i64 winv = modinv((u / pk) % P, P);
            for (int r : act) {
                if (r == i) continue;
                i64 t = A.at(r, i);
                if (t == 0) continue;
                i64 f = (P - modmul((t / pk) % P, winv, P)) % P;
                A.addmul_col(r, i, f);
                A.addmul_row(r, i, f);
            }
            pieces.push_back({best_v, 1, w % 256});
            act.erase(act.begin() + di);
        } else {
            int i = act[oi], j = act[oj];
            i64 a = A.at(i, i), b = A.at(i, j), c = A.at(j, j);
            i64 detB = (modmul(a, c, P) - modmul(b, b, P) % P + P) % P;
            i64 pk2 = pk * pk;
            i64 dU = (detB / pk2) % P;
            i64 dUinv = modinv(dU, P);
            for (int r : act) {
                if (r == i || r == j) continue;
                i64 s = A.at(i, r), t = A.at(j, r);
                // [f;g] = adj(B) [s;t] / det(B)
                i64 num_f = ((modmul(c, s, P) - modmul(b, t, P)) % P + P) % P;
                i64 num_g = ((modmul(a, t, P) - modmul(b, s, P)) % P + P) % P;
                i64 f = modmul((num_f / pk2) % P, dUinv, P);
                i64 g = modmul((num_g / pk2) % P, dUinv, P);
                i64 mf = (P - f) % P, mg = (P - g) % P;
                A.addmul_col(r, i, mf);
                A.addmul_col(r, j, mg);
                A.addmul_row(r, i, mf);
                A.addmul_row(r, j, mg);
            }
            Piece2 pc;
            pc.scale = best_v;
            pc.dim = 2;
            pc.unit = (dU % 256 + 256) % 256;
            pc.a = (a / pk) % 256;
            pc.b = (b / pk) % 256;
            pc.c = (c / pk) % 256;
            pieces.push_back(pc);
            if (oi > oj) std::swap(oi, oj);
            act.erase(act.begin() + oj);
            act.erase(act.begin() + oi);
        }
    }

    // resolve scales mixing 1-dim odd pieces with 2x2 even blocks: such a
    // scale is Type I and fully diagonalizable
    const i64 K = 256;
    std::map<int, std::vector<i64>> units;      // scale -> odd diagonal units mod 256
    std::map<int, std::vector<Piece2>> twoblocks;
    for (auto& pc : pieces) {
        if (pc.dim == 1) units[pc.scale].push_back(pc.unit % K);
        else twoblocks[pc.scale].push_back(pc);
    }
    for (auto& [sc, blocks] : twoblocks) {
        auto it = units.find(sc);
        while (!blocks.empty() && it != units.end() && !it->second.empty()) {
            Piece2 pc = blocks.back();
            blocks.pop_back();
            i64 u = it->second.back();
            it->second.pop_back();
            split_mixed(u, pc.a, pc.b, pc.c, K, it->second);
        }
    }

    std::map<int, Jordan2Block> blockmap;
    for (auto& [sc, us] : units) {
        if (us.empty()) continue;
        Jordan2Block& b = blockmap[sc];
        b.scale = sc;
        b.type = BlockType2::I;
        i64 dm = 1;
        int e1 = 0, e3 = 0;
        for (i64 u : us) {
            b.dim += 1;
            dm = (dm * u) % 8;
            if (u % 4 == 1) ++e1;
            else ++e3;
        }
        b.det_mod8 = dm;
        b.octane = ((e1 - e3) % 8 + 8) % 8;
    }
    for (auto& [sc, blocks] : twoblocks) {
        for (auto& pc : blocks) {
            Jordan2Block& b = blockmap[sc];
            b.scale = sc;
            if (b.type != BlockType2::I) b.type = BlockType2::II;
            b.dim += 2;
            b.det_mod8 = ((b.det_mod8 == 0 ? 1 : b.det_mod8) * pc.unit) % 8;
        }
        if (!blocks.empty() && blockmap[sc].type == BlockType2::I)
            throw std::logic_error("jordan_decompose_2: unresolved mixed scale");
    }
    for (auto& [sc, b] : blockmap) {
        if (b.det_mod8 == 0) b.det_mod8 = 1;
        if (b.type == BlockType2::II) b.octane = (b.det_mod8 == 1 || b.det_mod8 == 7) ? 0 : 4;
    }

    JordanSymbol2 sym;
    if (blockmap.empty()) throw SingularMatrixError("jordan_decompose_2: empty symbol");
    int lo = blockmap.begin()->first - 1;
    int hi = blockmap.rbegin()->first + 1;
    auto is_type1 = [&](int sc) {
        auto it = blockmap.find(sc);
        return it != blockmap.end() && it->second.type == BlockType2::I;
    };
    for (int sc = lo; sc <= hi; ++sc) {
        auto it = blockmap.find(sc);
        if (it != blockmap.end()) {
            sym.blocks.push_back(it->second);
        } else {
            Jordan2Block love;
            love.scale = sc;
            love.dim = 0;
            love.type = (is_type1(sc - 1) || is_type1(sc + 1)) ? BlockType2::LoveBound
                                                               : BlockType2::LoveFree;
            sym.blocks.push_back(love);
        }
    }
    auto it0 = blockmap.find(0);
    sym.oct = (it0 != blockmap.end()) ? it0->second.octane : 0;
    return sym;
}

Rational alpha_p_standard(int n, i64 p, i64 D) {
    Rational r(1);
    if (n % 2 == 1) {
        for (int k = 1; k <= (n - 1) / 2; ++k)
            r *= Rational(checked_sub(checked_pow(p, 2 * k), 1), checked_pow(p, 2 * k));
    } else {
        for (int k = 1; k <= n / 2 - 1; ++k)
            r *= Rational(checked_sub(checked_pow(p, 2 * k), 1), checked_pow(p, 2 * k));
        i64 arg = (n / 2) % 2 == 0 ? D : -D;
        int chi = ((2 * D) % p == 0) ? 0 : legendre(arg, p);
        r *= Rational(checked_sub(checked_pow(p, n / 2), chi), checked_pow(p, n / 2));
    }
    return r;
}

namespace {

// M_p(f) at odd p for a block of dimension m and determinant class dc.
Rational mp_factor_odd(i64 p, int m, int dc) {
    Rational r(1, 2);
    if (m % 2 == 1) {
        for (int i = 1; i <= (m - 1) / 2; ++i)
            r *= Rational(checked_pow(p, 2 * i), checked_sub(checked_pow(p, 2 * i), 1));
    } else {
        for (int i = 1; i <= (m - 2) / 2; ++i)
            r *= Rational(checked_pow(p, 2 * i), checked_sub(checked_pow(p, 2 * i), 1));
        int chi = legendre(m / 2 % 2 == 0 ? 1 : -1, p) * dc;
        r *= Rational(checked_pow(p, m / 2), checked_sub(checked_pow(p, m / 2), chi));
    }
    return r;
}

} // namespace

Rational alpha_p_conway_sloane(const SymMat& S, int n, i64 p) {
    JordanSymbolOdd sym = jordan_decompose_odd(S, n, p);
    int s = 0;
    for (auto& b : sym.blocks) s += b.scale * b.dim;

    Rational inv(2);
    for (auto& b : sym.blocks) inv *= mp_factor_odd(p, b.dim, b.det_class);
    i64 twice_exp = -(i64)s * (n + 1);
    for (size_t x = 0; x < sym.blocks.size(); ++x)
        for (size_t y = x + 1; y < sym.blocks.size(); ++y)
            twice_exp += (i64)(sym.blocks[y].scale - sym.blocks[x].scale) * sym.blocks[x].dim *
                         sym.blocks[y].dim;
    if (twice_exp % 2 != 0) throw std::logic_error("alpha_p_conway_sloane: half-integer power");
    inv *= Rational::pow(Rational(p), (int)(twice_exp / 2));
    return Rational(1) / inv;
}

namespace {

Rational one_minus_pow2(int e) { // 1 - 2^e for e <= 0
    return Rational(checked_sub(checked_pow(2, -e), 1), checked_pow(2, -e));
}
Rational one_plus_pow2(int e) {
    return Rational(checked_add(checked_pow(2, -e), 1), checked_pow(2, -e));
}

// The M_2(f_0) table keyed by dimension, type, and octane.
Rational m2_factor(int m, bool type1, int oct) {
    Rational r(1, 2);
    oct = ((oct % 8) + 8) % 8;
    if (m % 2 == 1) {
        if (m < 3) throw UnsupportedCaseError("M_2 table: odd block dimension >= 3");
        for (int i = 1; i <= (m - 3) / 2; ++i) r /= one_minus_pow2(-2 * i);
        if (oct == 1 || oct == 7) r /= one_minus_pow2((1 - m) / 2);
        else if (oct == 3 || oct == 5) r /= one_plus_pow2((1 - m) / 2);
        else throw UnsupportedCaseError("M_2 table: odd dimension needs odd octane");
    } else if (type1) {
        if (oct == 2 || oct == 6) {
            for (int i = 1; i <= (m - 2) / 2; ++i) r /= one_minus_pow2(-2 * i);
        } else if (oct == 0 || oct == 4) {
            if (m < 4) throw UnsupportedCaseError("M_2 table: even Type I block dim >= 4 here");
            for (int i = 1; i <= (m - 4) / 2; ++i) r /= one_minus_pow2(-2 * i);
            r /= (oct == 0) ? one_minus_pow2(1 - m / 2) : one_plus_pow2(1 - m / 2);
        } else {
            throw UnsupportedCaseError("M_2 table: even Type I needs even octane");
        }
    } else {
        for (int i = 1; i <= (m - 2) / 2; ++i) r /= one_minus_pow2(-2 * i);
        r /= (oct == 0) ? one_minus_pow2(-m / 2) : one_plus_pow2(-m / 2);
    }
    return r;
}

} // namespace

Rational alpha_2(const SymMat& S, int n) {
    i128 det = sym_det(S, n);
    if (det % 2 == 0)
        throw UnsupportedCaseError("alpha_2: even determinant symbol shapes not supported");
    JordanSymbol2 sym = jordan_decompose_2(S, n);
    const Jordan2Block* f0 = nullptr;
    for (auto& b : sym.blocks)
        if (b.dim > 0) {
            if (b.scale != 0 || f0)
                throw UnsupportedCaseError("alpha_2: expected a single unimodular block");
            f0 = &b;
        }
    if (!f0) throw SingularMatrixError("alpha_2: no unit block");

    bool type1 = f0->type == BlockType2::I;
    Rational m2 = m2_factor(f0->dim, type1, f0->octane);
    Rational inv;
    if (type1) {
        // bound love forms at scales -1 and +1 contribute 1/2 each
        inv = Rational(2) * Rational(1, 2) * Rational(1, 2) * m2;
    } else {
        inv = Rational(2) * m2 * Rational::pow(Rational(2), -f0->dim);
    }
    return Rational(1) / inv;
}

int hilbert_symbol(i64 a, i64 b, i64 p) {
    if (a == 0 || b == 0) throw PreconditionError("hilbert_symbol: nonzero arguments");
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1; // real place
    if (p == 2) {
        int alpha = 0, beta = 0;
        while (a % 2 == 0) a /= 2, ++alpha;
        while (b % 2 == 0) b /= 2, ++beta;
        auto eps = [](i64 u) { return (((u - 1) / 2) % 2 + 2) % 2; };
        auto omega = [](i64 u) { return (((u * u - 1) / 8) % 2 + 2) % 2; };
        int e = (int)((eps(a) * eps(b) + alpha * omega(b) + beta * omega(a)) % 2);
        return e == 0 ? 1 : -1;
    }
    int alpha = 0, beta = 0;
    while (a % p == 0) a /= p, ++alpha;
    while (b % p == 0) b /= p, ++beta;
    int r = 1;
    if ((alpha * beta) % 2 == 1 && legendre(-1, p) == -1) r = -r;
    if (beta % 2 == 1) r *= legendre(a, p);
    if (alpha % 2 == 1) r *= legendre(b, p);
    return r;
}

namespace {

// Rational congruence diagonalization; returns squarefree integer
// representatives of the diagonal.
std::vector<i64> rational_diagonal_reps(const SymMat& S, int n) {
    std::vector<Rational> M(n * n);
    for (int i = 0; i < n * n; ++i) M[i] = Rational(S[i]);
    std::vector<i64> reps;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int piv = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && M[i * n + i].num() != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i)
                for (int j = i + 1; j < n && a < 0; ++j)
                    if (!done[i] && !done[j] && M[i * n + j].num() != 0) {
                        a = i;
                        b = j;
                    }
            if (a < 0) throw SingularMatrixError("hasse_invariant: singular matrix");
            for (int j = 0; j < n; ++j) M[a * n + j] += M[b * n + j];
            for (int i = 0; i < n; ++i) M[i * n + a] += M[i * n + b];
            piv = a;
        }
        Rational d = M[piv * n + piv];
        done[piv] = true;
        for (int i = 0; i < n; ++i) {
            if (i == piv || done[i]) continue;
            Rational f = M[i * n + piv] / d;
            if (f.num() != 0) {
                for (int j = 0; j < n; ++j) M[i * n + j] -= f * M[piv * n + j];
                for (int j = 0; j < n; ++j) M[j * n + i] -= f * M[j * n + piv];
            }
        }
        i128 rep128 = checked_mul(d.num(), d.den()); // same square class as d
        if (i128_abs(rep128) > (i128)4e18) throw OverflowError("hasse: diagonal overflow");
        i64 rep = (i64)rep128;
        i64 sign = rep < 0 ? -1 : 1;
        i64 core = 1;
        for (auto& [q, e] : factorize(sign * rep))
            if (e % 2 == 1) core *= q;
        reps.push_back(sign * core);
    }
    return reps;
}

} // namespace

int hasse_invariant(const SymMat& S, int n, i64 p) {
    std::vector<i64> d = rational_diagonal_reps(S, n);
    int c = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c *= hilbert_symbol(d[i], d[j], p);
    return c;
}

int hasse_invariant_infinity(const SymMat& S, int n) {
    std::vector<i64> d = rational_diagonal_reps(S, n);
    int s = 0;
    for (i64 x : d)
        if (x < 0) ++s;
    return (s * (s - 1) / 2) % 2 == 0 ? 1 : -1;
}

double dirichlet_L(i64 q, int n_even) {
    if (n_even % 2 != 0 || n_even < 4)
        throw PreconditionError("dirichlet_L: even n with n/2 >= 2");
    i64 a = ((n_even / 2) % 2 == 0) ? q : -q;
    return l_jacobi_odd(n_even / 2.0, a, q);
}

double symmetric_orbit_constant(int n, i64 q) {
    if (n < 3) throw PreconditionError("symmetric_orbit_constant: n >= 3");
    double c = 0.5;
    for (int j = 3; j <= n; j += 2) c /= riemann_zeta(j);
    if (n % 2 == 1) return c;
    c *= dirichlet_L(q, n) / riemann_zeta(n);
    i64 r4 = ((n / 2) % 2 == 0) ? 1 : 3;
    if (q % 4 != r4) return c;
    double half = std::pow(2.0, 1 - n);
    if (q % 8 == 1 || q % 8 == 7) return c * (1 + half / (1 - std::pow(2.0, -n / 2.0)));
    return c * (1 + half / (1 + std::pow(2.0, -n / 2.0)));
}

double class_number_asymptotic(int n, i64 q) {
    if (n < 3) throw PreconditionError("class_number_asymptotic: n >= 3");
    double v = std::pow((double)q, (n - 1) / 2.0) * std::pow(M_PI, -n * (n + 1) / 4.0);
    for (int k = 1; k <= n; ++k) v *= std::tgamma(k / 2.0);
    if (n % 2 == 1) {
        for (int k = 1; k <= (n - 1) / 2; ++k) v *= riemann_zeta(2 * k);
        return v;
    }
    for (int k = 1; k <= n / 2 - 1; ++k) v *= riemann_zeta(2 * k);
    v *= dirichlet_L(q, n);
    i64 r4 = ((n / 2) % 2 == 0) ? 1 : 3;
    if (q % 4 != r4) return 2 * v;
    double extra = std::pow(2.0, 2 - n);
    if (q % 8 == 1 || q % 8 == 7) return v * (2 + extra / (1 - std::pow(2.0, -n / 2.0)));
    return v * (2 + extra / (1 + std::pow(2.0, -n / 2.0)));
}

double measure_ratio_constant(int n) {
    if (n < 2) throw PreconditionError("measure_ratio_constant: n >= 2");
    double c = (n % 2 == 0) ? 0.5 : 1.0;
    c *= std::pow(M_PI, n * (n + 1) / 4.0);
    for (int j = 2; j <= n; ++j) c /= riemann_zeta(j);
    for (int k = 1; k <= n; ++k) c /= std::tgamma(k / 2.0);
    return c;
}

MassResult siegel_mass(const SymMat& S, int n) {
    if (n < 3) throw PreconditionError("siegel_mass: n >= 3");
    if (!is_positive_definite(S, n)) throw PreconditionError("siegel_mass: positive definite");
    i128 det128 = sym_det(S, n);
    i64 D = (i64)det128;

    MassResult out;
    out.n = n;
    out.D = D;

    Rational bad(1);
    Rational a2 = alpha_2(S, n);
    out.alpha_factors[2] = a2;
    bad *= Rational(1) / a2;
    std::vector<i64> oddp;
    for (auto& [p, e] : factorize(D))
        if (p != 2) oddp.push_back(p);
    for (i64 p : oddp) {
        Rational ap = alpha_p_conway_sloane(S, n, p);
        out.alpha_factors[p] = ap;
        bad *= Rational(1) / ap;
    }
    out.bad_local_part = bad;

    double good = 1.0;
    int kmax = (n % 2 == 1) ? (n - 1) / 2 : n / 2 - 1;
    for (int k = 1; k <= kmax; ++k) {
        double f = riemann_zeta(2 * k) * (1.0 - std::pow(2.0, -2.0 * k));
        for (i64 p : oddp) f *= 1.0 - std::pow((double)p, -2.0 * k);
        good *= f;
    }
    if (n % 2 == 0) good *= l_jacobi_odd(n / 2.0, ((n / 2) % 2 == 0) ? D : -D, D);

    double mass = 2.0 * std::pow(M_PI, -n * (n + 1) / 4.0);
    for (int k = 1; k <= n; ++k) mass *= std::tgamma(k / 2.0);
    mass *= std::pow((double)D, (n + 1) / 2.0);
    mass *= good;
    mass *= bad.to_double();
    out.mass = mass;
    return out;
}

SymMat congruence_transform(const SymMat& S, const SymMat& U, int n) {
    SymMat T(n * n, 0), R(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            i64 acc = 0;
            for (int k = 0; k < n; ++k) acc += U[k * n + i] * S[k * n + j];
            T[i * n + j] = acc;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            i64 acc = 0;
            for (int k = 0; k < n; ++k) acc += T[i * n + k] * U[k * n + j];
            R[i * n + j] = acc;
        }
    return R;
}

SymMat random_unimodular(int n, u64 seed, int spread) {
    u64 state = seed * 0x9E3779B97F4A7C15ull + 1;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int attempt = 0; attempt < 64; ++attempt) {
        SymMat U(n * n, 0);
        for (int i = 0; i < n; ++i) U[i * n + i] = 1;
        int ops = 3 + (int)(next() % 4);
        for (int o = 0; o < ops; ++o) {
            int i = (int)(next() % n), j = (int)(next() % n);
            if (i == j) {
                for (int c = 0; c < n; ++c) U[i * n + c] = -U[i * n + c];
                continue;
            }
            i64 f = (next() % 2 == 0) ? 1 : -1;
            for (int c = 0; c < n; ++c) U[i * n + c] += f * U[j * n + c];
        }
        i64 mx = 0;
        for (i64 x : U) mx = std::max(mx, x < 0 ? -x : x);
        if (mx <= spread) return U;
    }
    // fall back to a signed permutation
    SymMat U(n * n, 0);
    for (int i = 0; i < n; ++i) U[i * n + (i + 1) % n] = 1;
    return U;
}

} // namespace bhlab
