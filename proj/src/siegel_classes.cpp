#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>

#include "bhlab/siegel.hpp"
#include "bhlab/spaces.hpp"

namespace bhlab {

namespace {

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e--) r *= b;
    return r;
}

i64 qform(const SymMat& S, int n, const i64* v) {
    i64 acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += v[i] * S[i * n + j] * v[j];
    return acc;
}

i64 bform(const SymMat& S, int n, const i64* u, const i64* v) {
    i64 acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += u[i] * S[i * n + j] * v[j];
    return acc;
}

i64 det3(const i64* c0, const i64* c1, const i64* c2) {
    return c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1]) +
           c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]);
}

i64 adj_diag(const SymMat& S, int n, int j) {
    if (n == 1) return 1;
    std::vector<i128> sub((n - 1) * (n - 1));
    int ri = 0;
    for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        int rj = 0;
        for (int c = 0; c < n; ++c) {
            if (c == j) continue;
            sub[ri * (n - 1) + rj] = S[r * n + c];
            ++rj;
        }
        ++ri;
    }
    return (i64)det_bareiss(std::move(sub), n - 1);
}

// All vectors with Q(v) <= bound, one per +- pair (first nonzero coordinate
// positive), sorted by (Q, lex).
std::vector<std::pair<i64, std::vector<i64>>> short_vectors(const SymMat& S, int n, i64 bound) {
    i64 D = (i64)sym_det(S, n);
    std::vector<i64> box(n);
    for (int j = 0; j < n; ++j) {
        double b = std::sqrt((double)bound * (double)adj_diag(S, n, j) / (double)D);
        box[j] = (i64)std::floor(b + 1e-9) + 1;
    }
    std::vector<std::pair<i64, std::vector<i64>>> out;
    std::vector<i64> v(n, 0);
    for (int j = 0; j < n; ++j) v[j] = -box[j];
    for (;;) {
        bool zero = true, canonical = false;
        for (int j = 0; j < n; ++j)
            if (v[j] != 0) {
                zero = false;
                canonical = v[j] > 0;
                break;
            }
        if (!zero && canonical) {
            i64 q = qform(S, n, v.data());
            if (q <= bound) out.push_back({q, v});
        }
        int pos = n - 1;
        while (pos >= 0) {
            if (v[pos] < box[pos]) {
                ++v[pos];
                break;
            }
            v[pos] = -box[pos];
            --pos;
        }
        if (pos < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

int int_rank(std::vector<std::vector<i64>> rows, int n) {
    int rank = 0;
    for (int col = 0; col < n && rank < (int)rows.size(); ++col) {
        int piv = -1;
        for (int r = rank; r < (int)rows.size(); ++r)
            if (rows[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < (int)rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            i64 a = rows[rank][col], b = rows[r][col];
            for (int c = 0; c < n; ++c) rows[r][c] = rows[r][c] * a - rows[rank][c] * b;
        }
        ++rank;
    }
    return rank;
}

} // namespace

AutResult automorphism_count(const SymMat& S, int n) {
    if (!is_positive_definite(S, n))
        throw PreconditionError("automorphism_count: positive definite only");
    i64 maxdiag = 0;
    for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, S[i * n + i]);
    auto vecs = short_vectors(S, n, maxdiag);

    // per-column candidates: vectors of the exact diagonal norm, both signs
    std::vector<std::vector<std::vector<i64>>> cands(n);
    for (int i = 0; i < n; ++i) {
        for (auto& [q, v] : vecs) {
            if (q != S[i * n + i]) continue;
            cands[i].push_back(v);
            std::vector<i64> neg(v);
            for (auto& x : neg) x = -x;
            cands[i].push_back(neg);
        }
    }

    AutResult out;
    std::vector<const std::vector<i64>*> chosen(n, nullptr);
    std::function<void(int)> rec = [&](int col) {
        if (col == n) {
            i64 d;
            if (n == 1) d = (*chosen[0])[0];
            else if (n == 2)
                d = (*chosen[0])[0] * (*chosen[1])[1] - (*chosen[1])[0] * (*chosen[0])[1];
            else
                d = det3(chosen[0]->data(), chosen[1]->data(), chosen[2]->data());
            if (d == 1 || d == -1) {
                ++out.count;
                if (d == -1) out.has_improper = true;
            }
            return;
        }
        for (auto& v : cands[col]) {
            bool ok = true;
            for (int prev = 0; prev < col; ++prev)
                if (bform(S, n, chosen[prev]->data(), v.data()) != S[prev * n + col]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen[col] = &v;
            rec(col + 1);
        }
    };
    rec(0);
    return out;
}

namespace {

std::vector<i64> canonical_form(const SymMat& S, int n) {
    i64 maxdiag = 0;
    for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, S[i * n + i]);
    auto vecs = short_vectors(S, n, maxdiag);
    if (vecs.empty()) throw std::logic_error("canonical_form: no short vectors");

    // successive minima via the rank of the span of vectors of norm <= q
    std::vector<i64> minima;
    {
        std::vector<std::vector<i64>> span;
        size_t i = 0;
        while (i < vecs.size() && (int)minima.size() < n) {
            i64 q = vecs[i].first;
            while (i < vecs.size() && vecs[i].first == q) {
                span.push_back(vecs[i].second);
                ++i;
            }
            int r = int_rank(span, n);
            while ((int)minima.size() < r) minima.push_back(q);
        }
        if ((int)minima.size() < n) throw std::logic_error("canonical_form: minima not reached");
    }

    std::vector<std::vector<std::vector<i64>>> lists(n);
    for (int i = 0; i < n; ++i) {
        for (auto& [q, v] : vecs) {
            if (q != minima[i]) continue;
            lists[i].push_back(v);
            if (i > 0) { // only the first vector's sign can be fixed globally
                std::vector<i64> neg(v);
                for (auto& x : neg) x = -x;
                lists[i].push_back(neg);
            }
        }
    }

    std::vector<i64> best;
    std::vector<const std::vector<i64>*> pick(n);
    std::vector<i64> gram(n * n);
    std::function<void(int)> rec = [&](int col) {
        if (col == n) {
            i64 d = (n == 2) ? (*pick[0])[0] * (*pick[1])[1] - (*pick[1])[0] * (*pick[0])[1]
                             : det3(pick[0]->data(), pick[1]->data(), pick[2]->data());
            if (d != 1 && d != -1) return;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    gram[i * n + j] = bform(S, n, pick[i]->data(), pick[j]->data());
            if (best.empty() || gram < best) best = gram;
            return;
        }
        for (auto& v : lists[col]) {
            pick[col] = &v;
            rec(col + 1);
        }
    };
    rec(0);
    if (best.empty()) throw std::logic_error("canonical_form: no unimodular minima basis");
    return best;
}

std::string key_of(const std::vector<i64>& v) {
    std::string s;
    for (i64 x : v) {
        s += std::to_string(x);
        s += ',';
    }
    return s;
}

} // namespace

std::vector<ClassData> enumerate_classes(int n, i64 D) {
    if (n != 2 && n != 3) throw PreconditionError("enumerate_classes: n in {2,3}");
    if (D < 1 || D > 200) throw BudgetError("enumerate_classes: D <= 200");

    std::vector<SymMat> candidates;
    if (n == 2) {
        for (i64 a = 1; a * a <= 4 * D / 3 + 1; ++a)
            for (i64 b = 0; 2 * b <= a; ++b) {
                if ((D + b * b) % a != 0) continue;
                i64 c = (D + b * b) / a;
                if (c < a) continue;
                candidates.push_back({a, b, b, c});
            }
    } else {
        for (i64 a = 1; a * a * a <= 2 * D; ++a)
            for (i64 b = a; a * b * b <= 2 * D; ++b)
                for (i64 c = b; a * b * c <= 2 * D; ++c)
                    for (i64 d = -a / 2; 2 * d <= a; ++d)
                        for (i64 e = -a / 2; 2 * e <= a; ++e)
                            for (i64 f = -b / 2; 2 * f <= b; ++f) {
                                SymMat S = {a, d, e, d, b, f, e, f, c};
                                if (sym_det(S, 3) != D) continue;
                                if (!is_positive_definite(S, 3)) continue;
                                candidates.push_back(S);
                            }
    }

    std::unordered_map<std::string, SymMat> unique;
    for (auto& S : candidates) {
        std::vector<i64> canon = canonical_form(S, n);
        unique.emplace(key_of(canon), S);
    }

    std::vector<ClassData> out;
    for (auto& [key, S] : unique) {
        ClassData cd;
        cd.rep = S;
        AutResult ar = automorphism_count(S, n);
        cd.aut = ar.count;
        cd.has_improper = ar.has_improper;
        out.push_back(cd);
    }
    std::sort(out.begin(), out.end(),
              [](const ClassData& a, const ClassData& b) { return a.rep < b.rep; });
    return out;
}

i64 class_number_bruteforce(int n, i64 D, Equivalence eq) {
    auto classes = enumerate_classes(n, D);
    i64 gl = (i64)classes.size();
    if (eq == Equivalence::GL) return gl;
    i64 extra = 0;
    for (auto& c : classes)
        if (!c.has_improper) ++extra;
    return gl + extra;
}

namespace {

// Exhaustive Z/2^k congruence-equivalence test; complete search, so both
// outcomes are certificates. Needs k fairly small.
bool z2_equivalent(const SymMat& S1, const SymMat& S2, int n, int k) {
    i64 M = (i64)1 << k;
    i64 total = 1;
    for (int i = 0; i < n; ++i) total *= M;
    if (total > (1 << 22)) throw BudgetError("z2_equivalent: modulus too large");

    auto qmod = [&](const i64* v, const SymMat& S) {
        i64 acc = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += v[i] * S[i * n + j] * v[j];
        return ((acc % M) + M) % M;
    };
    auto bmod = [&](const i64* u, const i64* v, const SymMat& S) {
        i64 acc = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += u[i] * S[i * n + j] * v[j];
        return ((acc % M) + M) % M;
    };

    std::vector<std::vector<i64>> buckets(M); // flat n-tuples per quadratic value
    {
        std::vector<i64> v(n, 0);
        for (;;) {
            auto& b = buckets[qmod(v.data(), S1)];
            b.insert(b.end(), v.begin(), v.end());
            int pos = n - 1;
            while (pos >= 0) {
                if (v[pos] < M - 1) {
                    ++v[pos];
                    break;
                }
                v[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }

    std::vector<const i64*> cols(n);
    std::function<bool(int)> rec = [&](int col) -> bool {
        if (col == n) {
            i64 d = (n == 2) ? cols[0][0] * cols[1][1] - cols[1][0] * cols[0][1]
                             : det3(cols[0], cols[1], cols[2]);
            return (d % 2 != 0);
        }
        i64 want = ((S2[col * n + col] % M) + M) % M;
        const auto& b = buckets[want];
        for (size_t off = 0; off + n <= b.size(); off += n) {
            const i64* cand = b.data() + off;
            bool ok = true;
            for (int prev = 0; prev < col; ++prev) {
                i64 target = ((S2[prev * n + col] % M) + M) % M;
                if (bmod(cols[prev], cand, S1) != target) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            cols[col] = cand;
            if (rec(col + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

std::string local_key(const SymMat& S, int n, i64 D, bool& needs_2adic_search) {
    std::string key;
    for (auto& [p, e] : factorize(D)) {
        if (p == 2) continue;
        JordanSymbolOdd sym = jordan_decompose_odd(S, n, p);
        key += "p" + std::to_string(p) + ":";
        for (auto& b : sym.blocks)
            key += std::to_string(b.scale) + "." + std::to_string(b.dim) + "." +
                   std::to_string(b.det_class) + ";";
    }
    JordanSymbol2 sym2 = jordan_decompose_2(S, n);
    key += "2:";
    if (D % 2 != 0) {
        for (auto& b : sym2.blocks)
            if (b.dim > 0)
                key += std::to_string((int)b.type) + "." + std::to_string(b.octane) + ";";
        needs_2adic_search = false;
    } else {
        // only the certain invariants; classes sharing a key are then merged
        // by the explicit congruence search
        for (auto& b : sym2.blocks)
            if (b.dim > 0)
                key += std::to_string(b.scale) + "." + std::to_string(b.dim) + "." +
                       std::to_string(b.type == BlockType2::I ? 1 : 2) + ";";
        key += "c2=" + std::to_string(hasse_invariant(S, n, 2));
        needs_2adic_search = true;
    }
    return key;
}

int v2_of(i64 x) {
    int v = 0;
    while (x % 2 == 0) x /= 2, ++v;
    return v;
}

} // namespace

std::vector<GenusData> mass_bruteforce(int n, i64 D) {
    auto classes = enumerate_classes(n, D);
    bool needs_search = false;
    std::map<std::string, std::vector<int>> groups;
    for (int i = 0; i < (int)classes.size(); ++i)
        groups[local_key(classes[i].rep, n, D, needs_search)].push_back(i);

    std::vector<std::vector<int>> genera;
    for (auto& [key, idxs] : groups) {
        if (!needs_search || idxs.size() == 1) {
            genera.push_back(idxs);
            continue;
        }
        if (v2_of(D) > 2)
            throw UnsupportedCaseError("mass_bruteforce: 2-adic split needs v2(D) <= 2");
        int k = v2_of(4 * D) + 3;
        std::vector<std::vector<int>> sub;
        for (int idx : idxs) {
            bool placed = false;
            for (auto& g : sub)
                if (z2_equivalent(classes[g[0]].rep, classes[idx].rep, n, k)) {
                    g.push_back(idx);
                    placed = true;
                    break;
                }
            if (!placed) sub.push_back({idx});
        }
        for (auto& g : sub) genera.push_back(g);
    }

    std::vector<GenusData> out;
    for (auto& g : genera) {
        GenusData gd;
        gd.class_indices = g;
        gd.representative = classes[g[0]].rep;
        Rational m(0);
        for (int idx : g) m += Rational(1, classes[idx].aut);
        gd.mass = m;
        out.push_back(gd);
    }
    std::sort(out.begin(), out.end(), [](const GenusData& a, const GenusData& b) {
        return a.representative < b.representative;
    });
    return out;
}

KitaokaRow kitaoka_relation_check(int n, i64 D) {
    KitaokaRow row;
    row.D = D;
    row.h_sl = class_number_bruteforce(n, D, Equivalence::SL);
    double total = 0;
    for (auto& g : mass_bruteforce(n, D)) total += g.mass.to_double();
    row.mass_total = total;
    double factor = (n % 2 == 1) ? 2.0 : 4.0;
    row.ratio = (double)row.h_sl / (factor * total);
    return row;
}

// ---- congruence solution counting (the defining limit of alpha_p) ----

namespace {

struct LinSolver {
    int neq, nunk, rank;
    std::vector<int> pivots;            // pivot column per reduced row
    std::vector<std::vector<int>> rows; // reduced coefficient rows (rank of them)
    std::vector<std::vector<int>> tr;   // full neq x neq row transform
    std::vector<std::vector<int>> kernel;
};

LinSolver build_solver(const std::vector<std::vector<int>>& A, int p) {
    int neq = (int)A.size(), nunk = (int)A[0].size();
    std::vector<std::vector<int>> M(A);
    std::vector<std::vector<int>> T(neq, std::vector<int>(neq, 0));
    for (int i = 0; i < neq; ++i) T[i][i] = 1;

    auto inv_mod = [&](int a) {
        int r = 1, b = a % p, e = p - 2;
        while (e) {
            if (e & 1) r = (int)((i64)r * b % p);
            b = (int)((i64)b * b % p);
            e >>= 1;
        }
        return r;
    };

    int rank = 0;
    std::vector<int> pivots;
    for (int col = 0; col < nunk && rank < neq; ++col) {
        int piv = -1;
        for (int r = rank; r < neq; ++r)
            if (M[r][col] % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[rank], M[piv]);
        std::swap(T[rank], T[piv]);
        int inv = inv_mod(((M[rank][col] % p) + p) % p);
        for (int c = 0; c < nunk; ++c) M[rank][c] = (int)((i64)M[rank][c] * inv % p);
        for (int c = 0; c < neq; ++c) T[rank][c] = (int)((i64)T[rank][c] * inv % p);
        for (int r = 0; r < neq; ++r) {
            if (r == rank) continue;
            int f = ((M[r][col] % p) + p) % p;
            if (!f) continue;
            for (int c = 0; c < nunk; ++c)
                M[r][c] = (int)(((i64)M[r][c] - (i64)f * M[rank][c]) % p + p) % p;
            for (int c = 0; c < neq; ++c)
                T[r][c] = (int)(((i64)T[r][c] - (i64)f * T[rank][c]) % p + p) % p;
        }
        pivots.push_back(col);
        ++rank;
    }

    LinSolver s;
    s.neq = neq;
    s.nunk = nunk;
    s.rank = rank;
    s.pivots = pivots;
    s.rows.assign(M.begin(), M.begin() + rank);
    s.tr = T;
    // kernel basis from the free columns
    std::vector<bool> is_piv(nunk, false);
    for (int c : pivots) is_piv[c] = true;
    for (int fc = 0; fc < nunk; ++fc) {
        if (is_piv[fc]) continue;
        std::vector<int> kv(nunk, 0);
        kv[fc] = 1;
        for (int r = 0; r < rank; ++r) kv[pivots[r]] = ((-M[r][fc]) % p + p) % p;
        s.kernel.push_back(kv);
    }
    return s;
}

} // namespace

std::vector<i64> congruence_counts(const SymMat& S, int n, i64 p, int k, i64 budget) {
    if (n > 3) throw PreconditionError("congruence_counts: n <= 3");
    if (ipow(p, k) > 128) throw BudgetError("congruence_counts: p^k <= 128");
    i64 P1 = p;

    auto smod = [&](i64 x, i64 m) { return ((x % m) + m) % m; };

    // base solutions mod p, column by column through quadratic-value buckets
    std::vector<std::vector<i64>> base; // flattened column-major T (n*n entries)
    {
        std::vector<std::vector<std::vector<i64>>> bucket(P1);
        std::vector<i64> v(n, 0);
        for (;;) {
            bucket[smod(qform(S, n, v.data()), p)].push_back(v);
            int pos = n - 1;
            while (pos >= 0) {
                if (v[pos] < p - 1) {
                    ++v[pos];
                    break;
                }
                v[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        std::vector<const std::vector<i64>*> cols(n);
        std::function<void(int)> rec = [&](int col) {
            if (col == n) {
                std::vector<i64> flat(n * n);
                for (int c = 0; c < n; ++c)
                    for (int r = 0; r < n; ++r) flat[c * n + r] = (*cols[c])[r];
                base.push_back(flat);
                return;
            }
            for (auto& cand : bucket[smod(S[col * n + col], p)]) {
                bool ok = true;
                for (int prev = 0; prev < col; ++prev)
                    if (smod(bform(S, n, cols[prev]->data(), cand.data()), p) !=
                        smod(S[prev * n + col], p)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                cols[col] = &cand;
                rec(col + 1);
            }
        };
        rec(0);
    }

    std::vector<i64> counts;
    counts.push_back((i64)base.size());

    std::unordered_map<u64, LinSolver> cache;
    auto solver_key = [&](const std::vector<int>& B) {
        u64 key = 0;
        for (int x : B) key = key * 131 + (u64)x;
        return key;
    };

    std::vector<std::vector<i64>> level = std::move(base);
    for (int j = 1; j < k; ++j) {
        i64 pj = ipow(p, j);
        i64 pj1 = pj * p;
        bool build_list = (j + 1 < k);
        i64 count_next = 0;
        std::vector<std::vector<i64>> next;

        for (auto& T : level) {
            // R = (S - T^t S T)/p^j mod p on symmetric positions
            std::vector<i64> TS(n * n, 0); // (T^t S T)
            {
                std::vector<i64> ST(n * n, 0);
                for (int i = 0; i < n; ++i)
                    for (int c = 0; c < n; ++c) {
                        i64 acc = 0;
                        for (int r = 0; r < n; ++r) acc += S[i * n + r] * T[c * n + r];
                        ST[i * n + c] = acc; // (S T)_{i,c} with T column-major
                    }
                for (int a = 0; a < n; ++a)
                    for (int c = 0; c < n; ++c) {
                        i64 acc = 0;
                        for (int r = 0; r < n; ++r) acc += T[a * n + r] * ST[r * n + c];
                        TS[a * n + c] = acc;
                    }
            }
            std::vector<int> rhs;
            bool divisible = true;
            for (int i = 0; i < n && divisible; ++i)
                for (int jj = i; jj < n; ++jj) {
                    i64 diff = S[i * n + jj] - TS[i * n + jj];
                    if (diff % pj != 0) {
                        divisible = false;
                        break;
                    }
                    rhs.push_back((int)smod(diff / pj, p));
                }
            if (!divisible) throw std::logic_error("congruence_counts: non-solution in level list");

            // B = S T mod p (B_{a,c} = sum_r S[a][r] T[c*n+r])
            std::vector<int> B(n * n);
            for (int a = 0; a < n; ++a)
                for (int c = 0; c < n; ++c) {
                    i64 acc = 0;
                    for (int r = 0; r < n; ++r) acc += S[a * n + r] * T[c * n + r];
                    B[a * n + c] = (int)smod(acc, p);
                }
            u64 key = solver_key(B);
            auto it = cache.find(key);
            if (it == cache.end()) {
                // unknowns E_{c,r} (column-major like T); equation (i<=j):
                // sum_a E_{i,a} B_{a,j} + E_{j,a} B_{a,i} = R_{ij}
                int nunk = n * n;
                std::vector<std::vector<int>> A;
                for (int i = 0; i < n; ++i)
                    for (int jj = i; jj < n; ++jj) {
                        std::vector<int> row(nunk, 0);
                        for (int a = 0; a < n; ++a) {
                            row[i * n + a] = (row[i * n + a] + B[a * n + jj]) % (int)p;
                            row[jj * n + a] = (row[jj * n + a] + B[a * n + i]) % (int)p;
                        }
                        A.push_back(row);
                    }
                it = cache.emplace(key, build_solver(A, (int)p)).first;
            }
            const LinSolver& sol = it->second;

            // transformed rhs and consistency on the null rows
            std::vector<int> tr_rhs(sol.neq, 0);
            for (int r = 0; r < sol.neq; ++r) {
                i64 acc = 0;
                for (int c = 0; c < sol.neq; ++c) acc += (i64)sol.tr[r][c] * rhs[c];
                tr_rhs[r] = (int)smod(acc, p);
            }
            bool consistent = true;
            for (int r = sol.rank; r < sol.neq; ++r)
                if (tr_rhs[r] != 0) {
                    consistent = false;
                    break;
                }
            if (!consistent) continue;

            int dker = sol.nunk - sol.rank;
            i64 lifts = ipow(p, dker);
            count_next += lifts;
            if (!build_list) continue;

            if ((i64)next.size() + lifts > budget / (i64)(n * n + 1))
                throw BudgetError("congruence_counts: lift list beyond budget");

            std::vector<int> E0(sol.nunk, 0);
            for (int r = 0; r < sol.rank; ++r) E0[sol.pivots[r]] = tr_rhs[r];
            std::vector<int> lambda(dker, 0);
            for (;;) {
                std::vector<i64> newT(T);
                for (int u = 0; u < sol.nunk; ++u) {
                    i64 e = E0[u];
                    for (int kk = 0; kk < dker; ++kk) e += (i64)lambda[kk] * sol.kernel[kk][u];
                    newT[u] = (T[u] + pj * smod(e, p)) % pj1;
                }
                next.push_back(std::move(newT));
                int pos = dker - 1;
                while (pos >= 0) {
                    if (lambda[pos] < p - 1) {
                        ++lambda[pos];
                        break;
                    }
                    lambda[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
        counts.push_back(count_next);
        if (build_list) level = std::move(next);
    }
    return counts;
}

BruteforceAlpha alpha_p_bruteforce(const SymMat& S, int n, i64 p, int k, i64 budget) {
    std::vector<i64> counts = congruence_counts(S, n, p, k, budget);
    BruteforceAlpha out;
    out.count = counts[k - 1];
    out.alpha = Rational(1, 2) * Rational((i128)counts[k - 1], checked_pow(p, k * n * (n - 1) / 2));
    if (k >= 2) {
        Rational prev = Rational(1, 2) *
                        Rational((i128)counts[k - 2], checked_pow(p, (k - 1) * n * (n - 1) / 2));
        out.stabilized = (prev == out.alpha);
    }
    return out;
}

} // namespace bhlab
