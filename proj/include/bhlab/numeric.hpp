#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bhlab {

using i64 = long long;
using u64 = unsigned long long;
using i128 = __int128;

struct OverflowError : std::runtime_error {
    OverflowError() : std::runtime_error("arithmetic overflow in checked 128-bit operation") {}
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};
struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};
struct UnsupportedCaseError : std::runtime_error {
    explicit UnsupportedCaseError(const std::string& what) : std::runtime_error(what) {}
};
struct DegeneratePatchError : std::runtime_error {
    explicit DegeneratePatchError(const std::string& what) : std::runtime_error(what) {}
};
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
    return r;
}
inline i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
    return r;
}
inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline i128 checked_pow(i128 base, int exp) {
    i128 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

inline i128 i128_abs(i128 x) { return x < 0 ? -x : x; }

inline i128 gcd128(i128 a, i128 b) {
    a = i128_abs(a);
    b = i128_abs(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string to_string_i128(i128 v);

inline double i128_to_double(i128 v) { return static_cast<double>(v); }

// Exact rational on checked 128-bit integers. Denominator kept positive.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(i128 n) : num_(n), den_(1) {}
    Rational(i128 n, i128 d) : num_(n), den_(d) { normalize(); }

    i128 num() const { return num_; }
    i128 den() const { return den_; }

    Rational operator+(const Rational& o) const {
        i128 g = gcd128(den_, o.den_);
        i128 l = checked_mul(den_ / g, o.den_);
        return Rational(checked_add(checked_mul(num_, o.den_ / g), checked_mul(o.num_, den_ / g)), l);
    }
    Rational operator-(const Rational& o) const { return *this + Rational(-o.num_, o.den_); }
    Rational operator*(const Rational& o) const {
        i128 g1 = gcd128(num_, o.den_);
        i128 g2 = gcd128(o.num_, den_);
        return Rational(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return *this * Rational(o.den_, o.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
    }

    double to_double() const { return static_cast<double>((long double)num_ / (long double)den_); }
    std::string str() const { return to_string_i128(num_) + "/" + to_string_i128(den_); }

    static Rational pow(const Rational& b, int e) {
        if (e < 0) return pow(Rational(b.den_, b.num_), -e);
        Rational r(1);
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        i128 g = gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    i128 num_, den_;
};

} // namespace bhlab
