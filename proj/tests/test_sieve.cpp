#include "doctest.h"

#include <cmath>

#include "bhlab/sieve.hpp"

using namespace bhlab;

namespace {

const MatrixSpace kFull2{Family::Full, 2};

// Per-point oracle for the z-rough count, bypassing the histogram machinery.
i64 oracle_rough(const MatrixSpace& sp, i64 T, double z) {
    auto zprimes = primes_up_to((i64)std::floor(z));
    int dim = sp.ambient_dim();
    std::vector<i64> c(dim, -T);
    i64 count = 0;
    for (;;) {
        i64 v = (i64)eval_poly_coords(sp, c);
        bool coprime = true;
        for (i64 p : zprimes)
            if (v % p == 0) {
                coprime = false;
                break;
            }
        if (coprime) ++count;
        int pos = dim - 1;
        while (pos >= 0) {
            if (c[pos] < T) {
                ++c[pos];
                break;
            }
            c[pos] = -T;
            --pos;
        }
        if (pos < 0) break;
    }
    return count;
}

i64 prime_count(const MatrixSpace& sp, i64 T) {
    return count_primes(sp, Region::box((double)T), 2).total;
}

i64 primes_above(const MatrixSpace& sp, i64 T, double z) {
    CountResult r = count_primes(sp, Region::box((double)T), 2);
    i64 acc = 0;
    for (auto& [p, c] : r.by_value)
        if ((double)p > z) acc += c;
    return acc;
}

} // namespace

TEST_CASE("rho examples and multiplicativity") {
    CHECK(rho(kFull2, 3) == 33);
    CHECK(rho(kFull2, 2) == 10);
    CHECK(rho(kFull2, 6) == 330);
    CHECK(rho(kFull2, 1) == 1);
    CHECK(rho(kFull2, 15) == rho(kFull2, 3) * rho(kFull2, 5));
    CHECK_THROWS_AS((void)rho(kFull2, 12), PreconditionError);
}

TEST_CASE("empty sieve below 2") {
    SieveResult r = rough_count(kFull2, 5, 1.5);
    CHECK(r.exact_rough_count == 11 * 11 * 11 * 11);
    CHECK(small_prime_contribution(kFull2, 5, 1.5) == 0);
}

TEST_CASE("rough count matches the per-point oracle") {
    for (double z : {2.0, 3.0, 5.0}) {
        CHECK(rough_count(kFull2, 8, z).exact_rough_count == oracle_rough(kFull2, 8, z));
    }
}

TEST_CASE("partition identity and unconditional containment") {
    for (i64 T : {8, 20}) {
        for (double z : {2.0, 5.0, 11.0}) {
            i64 total = prime_count(kFull2, T);
            i64 small = small_prime_contribution(kFull2, T, z);
            i64 above = primes_above(kFull2, T, z);
            CHECK(total == small + above);
            SieveResult r = rough_count(kFull2, T, z);
            CHECK(above <= r.exact_rough_count);
            CHECK(total <= small + r.exact_rough_count);
        }
    }
}

TEST_CASE("remainder table obeys the T^{dim-1} d^{dim-1} shape") {
    auto rows20 = remainder_experiment(kFull2, 20, 30);
    double cmax = 0;
    for (auto& row : rows20) {
        CHECK(row.bound == doctest::Approx(std::pow(20.0, 3) * std::pow((double)row.d, 3)));
        if (row.d > 1) cmax = std::max(cmax, row.ratio);
    }
    INFO("empirical c = " << cmax);
    // d = 1 is the lattice-vs-volume boundary row, checked exactly below;
    // the sieve-remainder constant applies from d = 2 on
    CHECK(cmax < 8.0);
    // r_1 = lattice count - volume = (2T+1)^4 - (2T)^4 = O(T^3)
    CHECK(rows20[0].d == 1);
    CHECK(rows20[0].r_d == doctest::Approx(std::pow(41.0, 4) - std::pow(40.0, 4)));

    // growth from T=20 to T=40 stays within 2^{dim-1} with slack
    auto rows40 = remainder_experiment(kFull2, 40, 10);
    for (auto& r40 : rows40) {
        for (auto& r20 : rows20) {
            if (r20.d != r40.d || std::fabs(r20.r_d) < 1) continue;
            CHECK(std::fabs(r40.r_d) <= 8.0 * 1.8 * std::fabs(r20.r_d) + 64.0);
        }
    }
}

TEST_CASE("main term decays like 1/log z") {
    double vol = std::pow(40.0, 4);
    double lo = 1e300, hi = 0;
    for (double z : {5.0, 11.0, 23.0, 50.0}) {
        SieveResult r = rough_count(kFull2, 20, z);
        double scaled = r.main_term / vol * std::log(z);
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
        CHECK(r.main_term > 0);
    }
    CHECK(hi / lo < 2.0);
}

TEST_CASE("sieve result carries the reported pieces") {
    SieveResult r = rough_count(kFull2, 20, 5.0);
    CHECK(r.prime_count_bound == doctest::Approx(r.sieve_constant * r.main_term + r.remainder_sum));
    CHECK(r.z == 5.0);
    CHECK(r.exact_rough_count > 0);
}
