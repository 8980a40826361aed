#include "bhlab/sieve.hpp"

#include <cmath>

namespace bhlab {

i64 rho(const MatrixSpace& sp, i64 d, int threads) { return rho_squarefree(sp, d, threads); }

SieveResult rough_count(const MatrixSpace& sp, i64 T, double z, int threads) {
    int dim = sp.ambient_dim();
    ValueHistogram h = value_histogram(sp, T, threads);
    std::vector<i64> zprimes = primes_up_to((i64)std::floor(z));

    SieveResult out;
    out.z = z;

    // exact rough count: gcd(F, P(z)) = 1
    i64 rough = 0;
    for (i64 v = -h.max_abs; v <= h.max_abs; ++v) {
        i64 c = h.get(v);
        if (!c) continue;
        bool coprime = true;
        for (i64 p : zprimes)
            if (v % p == 0) {
                coprime = false;
                break;
            }
        if (coprime) rough += c;
    }
    out.exact_rough_count = rough;

    double vol = std::pow(2.0 * (double)T, dim);
    double main = vol;
    for (i64 p : zprimes) {
        double rp = (double)rho(sp, p, threads);
        main *= 1.0 - rp / std::pow((double)p, dim);
    }
    out.main_term = main;

    double rsum = 0;
    for (i64 d = 1; d <= (i64)std::floor(z); ++d) {
        if (!is_squarefree(d)) continue;
        i64 exact = 0;
        for (i64 v = -h.max_abs; v <= h.max_abs; ++v)
            if (v % d == 0) exact += h.get(v);
        double expected = vol * (double)rho(sp, d, threads) / std::pow((double)d, dim);
        rsum += std::fabs((double)exact - expected);
    }
    out.remainder_sum = rsum;
    out.prime_count_bound = out.sieve_constant * main + rsum;
    return out;
}

std::vector<RemainderRow> remainder_experiment(const MatrixSpace& sp, i64 T, i64 d_max,
                                               int threads) {
    int dim = sp.ambient_dim();
    ValueHistogram h = value_histogram(sp, T, threads);
    double vol = std::pow(2.0 * (double)T, dim);
    std::vector<RemainderRow> rows;
    for (i64 d = 1; d <= d_max; ++d) {
        if (!is_squarefree(d)) continue;
        i64 exact = 0;
        for (i64 v = -h.max_abs; v <= h.max_abs; ++v)
            if (v % d == 0) exact += h.get(v);
        double expected = vol * (double)rho(sp, d, threads) / std::pow((double)d, dim);
        RemainderRow row;
        row.d = d;
        row.r_d = (double)exact - expected;
        row.bound = std::pow((double)T, dim - 1) * std::pow((double)d, dim - 1);
        row.ratio = std::fabs(row.r_d) / row.bound;
        rows.push_back(row);
    }
    return rows;
}

i64 small_prime_contribution(const MatrixSpace& sp, i64 T, double z, int threads) {
    ValueHistogram h = value_histogram(sp, T, threads);
    i64 zi = (i64)std::floor(z);
    i64 count = 0;
    for (i64 p : primes_up_to(std::min(zi, h.max_abs))) count += h.get(p);
    return count;
}

} // namespace bhlab
