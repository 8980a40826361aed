#include "bhlab/primes.hpp"

#include <algorithm>
#include <cmath>

namespace bhlab {

std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // Avoid negating INT128_MIN; peel digits from the negative side.
    std::string s;
    i128 x = neg ? v : -v;
    while (x != 0) {
        int d = static_cast<int>(-(x % 10));
        s.push_back(static_cast<char>('0' + d));
        x /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

PrimeTable::PrimeTable(i64 limit) : limit_(std::max<i64>(limit, 2)) {
    i64 half = limit_ / 2 + 1;
    bits_.assign((half + 63) / 64, 0);
    // index i represents odd number 2i+1; mark 1 composite
    bits_[0] |= 1ull;
    for (i64 i = 1; (2 * i + 1) * (2 * i + 1) <= limit_; ++i) {
        if (bits_[i >> 6] & (1ull << (i & 63))) continue;
        i64 p = 2 * i + 1;
        for (i64 j = (p * p - 1) / 2; j < half; j += p) bits_[j >> 6] |= (1ull << (j & 63));
    }
}

bool PrimeTable::is_prime(i64 n) const {
    if (n < 2) return false;
    if (n == 2) return true;
    if (n % 2 == 0) return false;
    if (n > limit_) throw PreconditionError("PrimeTable: query above sieve limit");
    i64 i = n / 2;
    return !(bits_[i >> 6] & (1ull << (i & 63)));
}

static u64 mulmod64(u64 a, u64 b, u64 m) { return (u64)((unsigned __int128)a * b % m); }

static u64 powmod64(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime64(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod64(a, d, (u64)n);
        if (x == 1 || x == (u64)n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, (u64)n);
            if (x == (u64)n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    PrimeTable t(n);
    out.push_back(2);
    for (i64 p = 3; p <= n; p += 2)
        if (t.is_prime(p)) out.push_back(p);
    return out;
}

std::vector<std::pair<i64, int>> factorize(i64 m) {
    if (m <= 0) throw PreconditionError("factorize: need m >= 1");
    std::vector<std::pair<i64, int>> f;
    for (i64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) m /= p, ++e;
            f.push_back({p, e});
        }
    }
    if (m > 1) {
        if (!is_prime64(m)) throw PreconditionError("factorize: cofactor beyond trial-division bound is not prime");
        f.push_back({m, 1});
    }
    return f;
}

bool is_squarefree(i64 d) {
    if (d < 1) return false;
    for (auto& [p, e] : factorize(d))
        if (e > 1) return false;
    return true;
}

int jacobi(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0) throw PreconditionError("jacobi: n must be positive odd");
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) n /= 2, ++v;
    if (v > 0) {
        if (a % 2 == 0) return 0;
        i64 r = ((a % 8) + 8) % 8;
        if ((v & 1) && (r == 3 || r == 5)) result = -result;
    }
    return result * jacobi(a, n);
}

} // namespace bhlab
