#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "oddwalks/errors.hpp"

namespace oddwalks {

// Exact rational on 64-bit numerator/denominator.  Every operation reduces
// by gcd and throws if the reduced value no longer fits; intermediates use
// 128-bit arithmetic.  Denominator is always positive, zero is 0/1.
class Rational {
  public:
    constexpr Rational() = default;
    Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_negative() const { return num_ < 0; }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational operator+(const Rational& o) const {
        return from_i128(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                         static_cast<__int128>(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const {
        return from_i128(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw Error("rational division by zero");
        return from_i128(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    Rational inverse() const { return Rational(1) / *this; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        __int128 lhs = static_cast<__int128>(num_) * o.den_;
        __int128 rhs = static_cast<__int128>(o.num_) * den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Canonical "p/q" form, e.g. "3/2", "-1/3", "0/1".
    std::string to_string() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    void assign(std::int64_t num, std::int64_t den) {
        if (den == 0) throw Error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num, den);
        num_ = g == 0 ? 0 : num / g;
        den_ = g == 0 ? 1 : den / g;
    }

    static Rational from_i128(__int128 num, __int128 den) {
        if (den == 0) throw Error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const __int128 g = gcd_i128(num < 0 ? -num : num, den);
        if (g != 0) {
            num /= g;
            den /= g;
        }
        constexpr __int128 lo = -static_cast<__int128>(INT64_MAX) - 1;
        constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
        if (num < lo || num > hi || den > hi) throw Error("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = den == 0 ? 1 : static_cast<std::int64_t>(den);
        return r;
    }

    static __int128 gcd_i128(__int128 a, __int128 b) {
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace oddwalks
