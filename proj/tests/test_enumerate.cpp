#include "doctest.h"

#include <cmath>

#include "bhlab/enumerate.hpp"
#include "bhlab/zeta.hpp"

using namespace bhlab;

namespace {

const MatrixSpace kFull2{Family::Full, 2};
const MatrixSpace kSym3{Family::Sym, 3};
const MatrixSpace kSkew1{Family::Skew, 1};
const MatrixSpace kSkew2{Family::Skew, 2};

// Exhaustive per-point oracle, independent of the histogram fast path.
i64 oracle_count_primes(const MatrixSpace& sp, i64 T, SignMode mode) {
    int dim = sp.ambient_dim();
    std::vector<i64> c(dim, -T);
    PrimeTable table(std::max<i64>((i64)hadamard_bound(sp, std::max<i64>(T, 1)), 4));
    i64 count = 0;
    for (;;) {
        i64 vv = (i64)eval_poly_coords(sp, c);
        i64 a = vv < 0 ? -vv : vv;
        bool hit = (mode == SignMode::PositivePrime) ? (vv > 1 && table.is_prime(vv))
                                                     : (a > 1 && table.is_prime(a));
        if (hit) ++count;
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

} // namespace

TEST_CASE("count_primes box examples") {
    CHECK(count_primes(kFull2, Region::box(1), 1).total == 4);
    CHECK(count_primes(kFull2, Region::box(1, SignMode::PrimeIdeal), 1).total == 8);
    CHECK(count_primes(kFull2, Region::box(0), 1).total == 0);
    CHECK(count_primes(kSym3, Region::box(0), 1).total == 0);
}

TEST_CASE("count_primes matches the exhaustive oracle") {
    for (i64 T : {1, 2, 3}) {
        CHECK(count_primes(kFull2, Region::box((double)T), 1).total ==
              oracle_count_primes(kFull2, T, SignMode::PositivePrime));
        CHECK(count_primes(kFull2, Region::box((double)T, SignMode::PrimeIdeal), 1).total ==
              oracle_count_primes(kFull2, T, SignMode::PrimeIdeal));
    }
    CHECK(count_primes(kSym3, Region::box(2), 1).total ==
          oracle_count_primes(kSym3, 2, SignMode::PositivePrime));
    CHECK(count_primes(kSkew2, Region::box(3), 1).total ==
          oracle_count_primes(kSkew2, 3, SignMode::PositivePrime));
}

TEST_CASE("count_level_set examples") {
    CHECK(count_level_set(kFull2, 1, Region::box(1), 1) == 20);
    CHECK(count_level_set(kFull2, 2, Region::box(1), 1) == 4);
    CHECK(count_level_set(kSkew1, 5, Region::box(4), 1) == 0);
    CHECK(count_level_set(kSkew1, 3, Region::box(4), 1) == 1);
}

TEST_CASE("histogram totals and by_value consistency") {
    ValueHistogram h = value_histogram(kFull2, 2, 1);
    CHECK(h.total() == 5 * 5 * 5 * 5);
    CountResult r = count_primes(kFull2, Region::box(5), 1);
    i64 sum = 0;
    for (auto& [p, c] : r.by_value) sum += c;
    CHECK(sum == r.total);
}

TEST_CASE("determinism across thread counts") {
    CountResult ref = count_primes(kFull2, Region::box(6), 1);
    for (int threads : {2, 8}) {
        CountResult r = count_primes(kFull2, Region::box(6), threads);
        CHECK(r.total == ref.total);
        CHECK(r.by_value == ref.by_value);
    }
}

TEST_CASE("monotonicity in T") {
    i64 prev = 0;
    for (i64 T = 1; T <= 6; ++T) {
        i64 cur = count_primes(kFull2, Region::box((double)T), 2).total;
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("sign symmetry: PrimeIdeal doubles PositivePrime where it should") {
    // Full: negate one row; Sym n odd and Skew n odd: A -> -A
    CHECK(count_primes(kFull2, Region::box(4, SignMode::PrimeIdeal), 2).total ==
          2 * count_primes(kFull2, Region::box(4), 2).total);
    CHECK(count_primes(kSym3, Region::box(2, SignMode::PrimeIdeal), 2).total ==
          2 * count_primes(kSym3, Region::box(2), 2).total);
    CHECK(count_primes(kSkew1, Region::box(30, SignMode::PrimeIdeal), 1).total ==
          2 * count_primes(kSkew1, Region::box(30), 1).total);
}

TEST_CASE("primes in arithmetic progressions partition the count") {
    CountResult all = count_primes(kFull2, Region::box(4), 1);
    i64 split = 0;
    for (i64 a : {1, 3}) split += count_primes(kFull2, Region::box(4), 1, Progression{a, 4}).total;
    split += all.by_value.count(2) ? all.by_value.at(2) : 0;
    CHECK(split == all.total);
    CHECK_THROWS_AS((void)count_primes(kFull2, Region::box(2), 1, Progression{2, 4}),
                    PreconditionError);
}

TEST_CASE("hecke G factors") {
    CHECK(hecke_G(2, 4) == 7);
    CHECK(hecke_G(3, 2) == 7);
    CHECK(hecke_G(2, 1) == 1);
    CHECK(hecke_G(5, 1) == 1);
    // G_2(m) = sigma(m), against a direct divisor sum
    for (i64 m = 1; m <= 10000; ++m) {
        i64 sigma = 0;
        for (i64 d = 1; d * d <= m; ++d)
            if (m % d == 0) sigma += d + (d * d == m ? 0 : m / d);
        CHECK(hecke_G(2, m) == (i128)sigma);
    }
}

TEST_CASE("hecke prediction scales by zeta and G") {
    double mu = 3.7;
    double z2 = 1.0 / riemann_zeta(2);
    CHECK(hecke_prediction(2, 1, mu) == doctest::Approx(z2 * mu));
    CHECK(hecke_prediction(2, 4, mu) == doctest::Approx(7 * z2 * mu));
}

TEST_CASE("level-set counts in a cone track G_n(m)") {
    // Omega = SL_2(R) patch of sup-norm height 4; counting V_m inside
    // m^{1/2} Omega and comparing the ratio to G_2(m) = sigma(m).
    PatchPredicate patch = [](const std::vector<double>& v) {
        for (double x : v)
            if (std::fabs(x) > 4.0) return false;
        return true;
    };
    Region cone = Region::cone(patch, 3.0, 4.0);
    double n1 = (double)count_level_set(kFull2, 1, cone, 2);
    CHECK(n1 > 50);
    for (i64 m : {2, 3, 4, 5, 6}) {
        double nm = (double)count_level_set(kFull2, m, cone, 2);
        double g = (double)(i64)hecke_G(2, m);
        double ratio = nm / n1 / g;
        INFO("m=" << m << " ratio=" << ratio);
        CHECK(ratio > 0.5);
        CHECK(ratio < 1.6);
    }
}

TEST_CASE("radial region with constant rho matches the box") {
    Region ball = Region::radial_region([](const std::vector<double>&) { return 1.0; }, 4.0, 1.0);
    CHECK(count_primes(kFull2, ball, 1).total ==
          count_primes(kFull2, Region::box(4), 1).total);
    CHECK(count_level_set(kFull2, 2, ball, 1) == count_level_set(kFull2, 2, Region::box(4), 1));
}

TEST_CASE("count rejects bad inputs") {
    CHECK_THROWS_AS((void)count_level_set(kFull2, 0, Region::box(2), 1), PreconditionError);
    Region unbounded = Region::custom([](const std::vector<double>&) { return true; }, 1e300);
    CHECK_THROWS_AS((void)count_primes(kFull2, unbounded, 1), PreconditionError);
}
