#ifndef OCGR_RATIONAL_HPP
#define OCGR_RATIONAL_HPP

#include "ocgr/errors.hpp"

#include <cstdint>
#include <numeric>
#include <string>

namespace ocgr {

/// Exact rational over int64, normalized (den > 0, gcd(num, den) == 1).
/// Intermediate products run through __int128; anything that would leave
/// int64 after normalization raises NumericalFailure, which the solvers
/// surface to the caller instead of silently losing precision.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0)
            raise(ErrorKind::NumericalFailure, "rational with zero denominator");
        normalize_from(num, den);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational &a, const Rational &b) {
        __int128 num = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 den = (__int128)a.den_ * b.den_;
        return from_wide(num, den);
    }
    friend Rational operator-(const Rational &a, const Rational &b) {
        return a + (-b);
    }
    friend Rational operator*(const Rational &a, const Rational &b) {
        __int128 num = (__int128)a.num_ * b.num_;
        __int128 den = (__int128)a.den_ * b.den_;
        return from_wide(num, den);
    }
    friend Rational operator/(const Rational &a, const Rational &b) {
        if (b.num_ == 0)
            raise(ErrorKind::NumericalFailure, "rational division by zero");
        __int128 num = (__int128)a.num_ * b.den_;
        __int128 den = (__int128)a.den_ * b.num_;
        return from_wide(num, den);
    }

    Rational &operator+=(const Rational &o) { return *this = *this + o; }
    Rational &operator-=(const Rational &o) { return *this = *this - o; }
    Rational &operator*=(const Rational &o) { return *this = *this * o; }
    Rational &operator/=(const Rational &o) { return *this = *this / o; }

    friend bool operator==(const Rational &a, const Rational &b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational &a, const Rational &b) {
        return !(a == b);
    }
    friend bool operator<(const Rational &a, const Rational &b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational &a, const Rational &b) { return b < a; }
    friend bool operator<=(const Rational &a, const Rational &b) { return !(b < a); }
    friend bool operator>=(const Rational &a, const Rational &b) { return !(a < b); }

    std::string to_string() const {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static Rational from_wide(__int128 num, __int128 den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
            raise(ErrorKind::NumericalFailure, "rational overflow");
        Rational r;
        r.num_ = (std::int64_t)num;
        r.den_ = (std::int64_t)den;
        if (r.den_ == 0)
            raise(ErrorKind::NumericalFailure, "rational with zero denominator");
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize_from(std::int64_t num, std::int64_t den) {
        Rational r = from_wide(num, den);
        num_ = r.num_;
        den_ = r.den_;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational abs(const Rational &r) {
    return r.num() < 0 ? -r : r;
}

} // namespace ocgr

#endif
