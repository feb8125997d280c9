#pragma once

// Arbitrary-precision integer and rational arithmetic. Every identity check
// in this library runs on these types; no rounding ever occurs. Integers are
// unbounded (boost cpp_int), so power-tower terms like 12^21 are exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace equimax {

using BigInt = boost::multiprecision::cpp_int;

// Reduced fraction num/den with den > 0 and gcd(|num|, den) = 1.
// Values are immutable in spirit: every operation returns a fresh,
// canonical-form result, and the class never mutates through shared state.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) {
            throw std::domain_error("Rational: zero denominator");
        }
        normalize();
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const {
        Rational r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) {
            throw std::domain_error("Rational: division by zero");
        }
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Serialized form used in all reports: "p/q", or just "p" when q = 1.
    std::string str() const {
        if (den_ == 1) {
            return num_.str();
        }
        return num_.str() + "/" + den_.str();
    }

    // Parses "p", "p/q", with optional leading minus on either part.
    static Rational from_string(std::string_view text) {
        auto bad = [&] {
            throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
        };
        auto parse_int = [&](std::string_view s) -> BigInt {
            if (s.empty()) bad();
            std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (i == s.size()) bad();
            for (std::size_t j = i; j < s.size(); ++j) {
                if (s[j] < '0' || s[j] > '9') bad();
            }
            return BigInt(std::string(s));
        };
        auto slash = text.find('/');
        if (slash == std::string_view::npos) {
            return Rational(parse_int(text));
        }
        BigInt p = parse_int(text.substr(0, slash));
        BigInt q = parse_int(text.substr(slash + 1));
        if (q.is_zero()) {
            throw std::domain_error("Rational: zero denominator in '" + std::string(text) + "'");
        }
        return Rational(std::move(p), std::move(q));
    }

    // Lossy conversion for numeric output only. Computes a ~64-bit scaled
    // quotient and rebases it with ldexp, so any magnitude converts with
    // ordinary IEEE overflow/underflow behavior instead of inf/inf.
    double to_double() const {
        if (num_.is_zero()) {
            return 0.0;
        }
        const bool neg = num_ < 0;
        const BigInt a = neg ? BigInt(-num_) : num_;
        const long long diff = static_cast<long long>(boost::multiprecision::msb(a)) -
                               static_cast<long long>(boost::multiprecision::msb(den_));
        if (diff > 1100) {
            return neg ? -std::numeric_limits<double>::infinity()
                       : std::numeric_limits<double>::infinity();
        }
        if (diff < -1140) {
            return 0.0;
        }
        const long long shift = 64 - diff;
        const BigInt q = shift >= 0 ? BigInt((a << shift) / den_)
                                    : BigInt(a / (den_ << -shift));
        const double res = std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
        return neg ? -res : res;
    }

  private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

// Exact integer power with negative exponents allowed for nonzero base.
inline Rational rat_pow(const Rational& base, long long e) {
    if (e < 0 && base.is_zero()) {
        throw std::domain_error("rat_pow: zero base with negative exponent");
    }
    const unsigned long long mag = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1
                                         : static_cast<unsigned long long>(e);
    BigInt p = boost::multiprecision::pow(base.num(), static_cast<unsigned>(mag));
    BigInt q = boost::multiprecision::pow(base.den(), static_cast<unsigned>(mag));
    return e < 0 ? Rational(std::move(q), std::move(p)) : Rational(std::move(p), std::move(q));
}

// C(n, k); zero when k > n. Multiplicative form, every division exact.
inline BigInt binomial(unsigned long long n, unsigned long long k) {
    if (k > n) {
        return BigInt(0);
    }
    if (k > n - k) {
        k = n - k;
    }
    BigInt r(1);
    for (unsigned long long i = 1; i <= k; ++i) {
        r *= BigInt(n - k + i);
        r /= BigInt(i);
    }
    return r;
}

inline BigInt factorial(unsigned n) {
    BigInt r(1);
    for (unsigned i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

}  // namespace equimax
