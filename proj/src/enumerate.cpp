#include "bhlab/enumerate.hpp"

#include <atomic>
#include <functional>
#include <chrono>
#include <thread>

#include "bhlab/zeta.hpp"

namespace bhlab {

// Fast inline F on int64 coords for the small shapes the hot loops touch.
// Falls back to the exact checked evaluator for anything else.
static i128 eval_small(const MatrixSpace& sp, const i64* c) {
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
                // coords (a00,a01,a02,a11,a12,a22)
                return (i128)c[0] * ((i128)c[3] * c[5] - (i128)c[4] * c[4]) -
                       (i128)c[1] * ((i128)c[1] * c[5] - (i128)c[4] * c[2]) +
                       (i128)c[2] * ((i128)c[1] * c[4] - (i128)c[3] * c[2]);
            break;
        case Family::Skew:
            if (sp.n == 1) return c[0];
            if (sp.n == 2)
                // coords (a12,a13,a14,a23,a24,a34)
                return (i128)c[0] * c[5] - (i128)c[1] * c[4] + (i128)c[2] * c[3];
            break;
    }
    std::vector<i64> v(c, c + sp.ambient_dim());
    return eval_poly_coords(sp, v);
}

// Chunked parallel run over the first free coordinate; chunks merged in
// index order so results are identical for any thread count.
template <typename Local, typename Work, typename Merge>
static void parallel_chunks(i64 lo, i64 hi, int threads, Work work, Merge merge,
                            std::vector<Local>& locals) {
    if (threads < 1) threads = 1;
    i64 span = hi - lo + 1;
    int nchunks = std::min<i64>(span, std::max(threads * 4, 1));
    if (nchunks <= 0) nchunks = 1;
    locals.resize(nchunks);
    std::vector<std::pair<i64, i64>> ranges(nchunks);
    for (int i = 0; i < nchunks; ++i) {
        i64 a = lo + span * i / nchunks;
        i64 b = lo + span * (i + 1) / nchunks - 1;
        ranges[i] = {a, b};
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto runner = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= nchunks) break;
            work(ranges[i].first, ranges[i].second, locals[i]);
        }
    };
    int nthreads = std::min(threads, nchunks);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(runner);
    runner();
    for (auto& th : pool) th.join();
    for (int i = 0; i < nchunks; ++i) merge(locals[i]);
}

// One pass over the box, enumerating all but the last free coordinate and
// sweeping the last one incrementally (F is linear in it for all three
// families: any entry for Full/Skew, the trailing diagonal entry for Sym).
ValueHistogram value_histogram(const MatrixSpace& sp, i64 T, int threads) {
    int dim = sp.ambient_dim();
    i128 bound128 = hadamard_bound(sp, std::max<i64>(T, 1));
    if (bound128 > (i128)10000000)
        throw BudgetError("value_histogram: |F| bound exceeds histogram budget; lower T");
    i64 maxabs = (i64)bound128;

    ValueHistogram out;
    out.max_abs = maxabs;
    out.counts.assign(2 * maxabs + 1, 0);
    if (dim == 1) {
        for (i64 v = -T; v <= T; ++v) out.counts[v + maxabs] += 1;
        return out;
    }

    auto work = [&](i64 c0lo, i64 c0hi, std::vector<i64>& hist) {
        hist.assign(2 * maxabs + 1, 0);
        std::vector<i64> c(dim, -T);
        for (i64 c0 = c0lo; c0 <= c0hi; ++c0) {
            c[0] = c0;
            // odometer over coords 1..dim-2
            for (int i = 1; i < dim - 1; ++i) c[i] = -T;
            for (;;) {
                c[dim - 1] = 0;
                i128 B = eval_small(sp, c.data());
                c[dim - 1] = 1;
                i128 A = eval_small(sp, c.data()) - B;
                i64 a = (i64)A, b = (i64)B;
                i64 val = -T * a + b;
                i64* h = hist.data() + maxabs;
                for (i64 d = -T; d <= T; ++d, val += a) ++h[val];
                // advance odometer
                int pos = dim - 2;
                while (pos >= 1) {
                    if (c[pos] < T) {
                        ++c[pos];
                        break;
                    }
                    c[pos] = -T;
                    --pos;
                }
                if (pos < 1) break;
            }
        }
    };
    std::vector<std::vector<i64>> locals;
    parallel_chunks<std::vector<i64>>(
        -T, T, threads, work,
        [&](std::vector<i64>& h) {
            for (size_t i = 0; i < h.size(); ++i) out.counts[i] += h[i];
        },
        locals);
    return out;
}

static bool value_matches(i64 v, SignMode mode, const std::function<bool(i64)>& is_prime,
                          const std::optional<Progression>& prog) {
    i64 a = v < 0 ? -v : v;
    if (mode == SignMode::PositivePrime && v <= 0) return false;
    if (!is_prime(a)) return false;
    if (prog) {
        i64 r = ((v % prog->q) + prog->q) % prog->q;
        if (r != ((prog->a % prog->q) + prog->q) % prog->q) return false;
    }
    return true;
}

// Direct per-point loop with real-region membership; used for non-box regions.
static CountResult count_region_direct(const MatrixSpace& sp, const Region& region, int threads,
                                       std::optional<Progression> prog, bool primes_mode,
                                       i64 level_m) {
    int dim = sp.ambient_dim();
    i64 R = (i64)std::floor(region.bounding_radius + 1e-9);
    if (!(region.bounding_radius < 1e15))
        throw PreconditionError("count: region with unbounded radius");
    i128 bound128 = hadamard_bound(sp, std::max<i64>(R, 1));
    if (bound128 > (i128)4e18) throw OverflowError("count: |F| bound exceeds 64-bit safety margin");
    // sieve within the memory budget, deterministic Miller-Rabin beyond
    bool use_table = primes_mode && bound128 <= (i128)(1LL << 32);
    PrimeTable table(use_table ? std::max<i64>((i64)bound128, 4) : 4);
    std::function<bool(i64)> is_prime = [&table, use_table](i64 a) {
        return use_table ? table.is_prime(a) : is_prime64(a);
    };

    struct Local {
        i64 total = 0;
        std::map<i64, i64> by_value;
    };
    auto work = [&](i64 c0lo, i64 c0hi, Local& loc) {
        std::vector<i64> c(dim, -R);
        std::vector<double> x(dim);
        for (i64 c0 = c0lo; c0 <= c0hi; ++c0) {
            c[0] = c0;
            for (int i = 1; i < dim; ++i) c[i] = -R;
            for (;;) {
                for (int i = 0; i < dim; ++i) x[i] = (double)c[i];
                if (region.contains(sp, x)) {
                    i64 v = (i64)eval_small(sp, c.data());
                    if (primes_mode) {
                        if (value_matches(v, region.sign_mode, is_prime, prog)) {
                            ++loc.total;
                            ++loc.by_value[region.sign_mode == SignMode::PrimeIdeal ? std::abs(v) : v];
                        }
                    } else if (v == level_m) {
                        ++loc.total;
                    }
                }
                int pos = dim - 1;
                while (pos >= 1) {
                    if (c[pos] < R) {
                        ++c[pos];
                        break;
                    }
                    c[pos] = -R;
                    --pos;
                }
                if (pos < 1) break;
            }
        }
    };
    CountResult out;
    std::vector<Local> locals;
    if (R >= 0) {
        parallel_chunks<Local>(
            -R, R, threads, work,
            [&](Local& l) {
                out.total += l.total;
                for (auto& [k, v] : l.by_value) out.by_value[k] += v;
            },
            locals);
    }
    out.thread_count = threads;
    return out;
}

CountResult count_primes(const MatrixSpace& sp, const Region& region, int threads,
                         std::optional<Progression> progression) {
    if (progression && gcd64(progression->a, progression->q) != 1)
        throw PreconditionError("count_primes: progression needs gcd(a,q) = 1");
    auto t0 = std::chrono::steady_clock::now();
    CountResult out;
    if (region.kind == Region::Kind::Box) {
        i64 T = (i64)std::floor(region.T + 1e-9);
        if (T < 0) T = 0;
        ValueHistogram h = value_histogram(sp, T, threads);
        PrimeTable table(std::max<i64>(h.max_abs, 4));
        for (i64 p = 2; p <= h.max_abs; ++p) {
            if (!table.is_prime(p)) continue;
            if (progression) {
                i64 want = ((progression->a % progression->q) + progression->q) % progression->q;
                bool pos_ok = (p % progression->q) == want;
                bool neg_ok = (((-p) % progression->q) + progression->q) % progression->q == want;
                i64 cnt = 0;
                if (pos_ok) cnt += h.get(p);
                if (region.sign_mode == SignMode::PrimeIdeal && neg_ok) cnt += h.get(-p);
                if (cnt) {
                    out.total += cnt;
                    out.by_value[p] += cnt;
                }
            } else {
                i64 cnt = h.get(p);
                if (region.sign_mode == SignMode::PrimeIdeal) cnt += h.get(-p);
                if (cnt) {
                    out.total += cnt;
                    out.by_value[p] += cnt;
                }
            }
        }
        out.thread_count = threads;
    } else {
        out = count_region_direct(sp, region, threads, progression, true, 0);
    }
    out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

i64 count_level_set(const MatrixSpace& sp, i64 m, const Region& region, int threads) {
    if (m == 0) throw PreconditionError("count_level_set: m must be nonzero");
    if (region.kind == Region::Kind::Box) {
        i64 T = (i64)std::floor(region.T + 1e-9);
        if (T < 0) T = 0;
        ValueHistogram h = value_histogram(sp, T, threads);
        return h.get(m);
    }
    return count_region_direct(sp, region, threads, std::nullopt, false, m).total;
}

i128 hecke_G(int n, i64 m) {
    if (m < 1) throw PreconditionError("hecke_G: m >= 1");
    i128 num = 1, den = 1;
    for (auto& [p, e] : factorize(m)) {
        for (int j = 1; j <= n - 1; ++j) {
            num = checked_mul(num, checked_sub(checked_pow((i128)p, e + j), 1));
            den = checked_mul(den, checked_sub(checked_pow((i128)p, j), 1));
        }
    }
    if (num % den != 0) throw std::logic_error("hecke_G: non-integral ratio");
    return num / den;
}

double hecke_prediction(int n, i64 m, double mu_omega) {
    if (n < 2) throw PreconditionError("hecke_prediction: n >= 2");
    double z = 1.0;
    for (int j = 2; j <= n; ++j) z /= riemann_zeta(j);
    return z * i128_to_double(hecke_G(n, m)) * mu_omega;
}

} // namespace bhlab
