#pragma once

// Exact scalars used for formal degrees, discriminants and case values:
// rationals, rational multiples of half-integer powers of q, and elements
// a + b*sqrt(q) of Q(sqrt q).

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "scchar/errors.hpp"

namespace scchar {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_pow(std::int64_t base, int exponent) {
    BigInt b = 1;
    for (int i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) b *= base;
    return exponent < 0 ? Rational(BigInt(1), b) : Rational(b);
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// "a/b" for non-integers, "a" for integers.
inline std::string format_rational(const Rational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Formats a doubled half-integer: 3 -> "3/2", 4 -> "2", -1 -> "-1/2".
inline std::string format_half(int doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

/// Element a + b*sqrt(q) of Q(sqrt q), q not a square.
class Surd {
public:
    Surd() = default;
    Surd(std::int64_t q, Rational a, Rational b = 0) : q_(q), a_(std::move(a)), b_(std::move(b)) {}

    std::int64_t q() const { return q_; }
    const Rational& rational_part() const { return a_; }
    const Rational& sqrt_part() const { return b_; }
    bool is_rational() const { return b_ == 0; }

    /// Sign of a + b sqrt(q), decided exactly.
    int sign() const {
        const int sa = a_.sign();
        const int sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // a and b*sqrt(q) have opposite signs; compare squares.
        const Rational lhs = a_ * a_;
        const Rational rhs = b_ * b_ * q_;
        if (lhs == rhs) return 0;
        return lhs > rhs ? sa : sb;
    }

    double to_double() const {
        return scchar::to_double(a_) + scchar::to_double(b_) * std::sqrt(static_cast<double>(q_));
    }

    friend Surd operator+(const Surd& x, const Surd& y) { check(x, y); return {x.q_, x.a_ + y.a_, x.b_ + y.b_}; }
    friend Surd operator-(const Surd& x, const Surd& y) { check(x, y); return {x.q_, x.a_ - y.a_, x.b_ - y.b_}; }
    friend Surd operator*(const Surd& x, const Surd& y) {
        check(x, y);
        return {x.q_, x.a_ * y.a_ + x.b_ * y.b_ * x.q_, x.a_ * y.b_ + x.b_ * y.a_};
    }
    Surd operator-() const { return {q_, -a_, -b_}; }

    friend bool operator==(const Surd& x, const Surd& y) { return x.q_ == y.q_ && x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
    friend bool operator<=(const Surd& x, const Surd& y) { return (x - y).sign() <= 0; }

    std::string str() const {
        if (b_ == 0) return format_rational(a_);
        std::string s;
        if (a_ != 0) s = format_rational(a_) + (b_ > 0 ? "+" : "");
        return s + format_rational(b_) + "*sqrt(" + std::to_string(q_) + ")";
    }

private:
    static void check(const Surd& x, const Surd& y) {
        if (x.q_ != y.q_) throw DomainError("Surd operands over different q");
    }

    std::int64_t q_ = 0;
    Rational a_ = 0;
    Rational b_ = 0;
};

/// coeff * q^(half_exp / 2).
struct QPower {
    std::int64_t q = 0;
    Rational coeff = 0;
    int half_exp = 0;

    Surd to_surd() const {
        const int whole = half_exp >= 0 ? half_exp / 2 : -((-half_exp + 1) / 2);
        const bool odd = (half_exp - 2 * whole) != 0;
        const Rational c = coeff * rational_pow(q, whole);
        return odd ? Surd(q, 0, c) : Surd(q, c, 0);
    }
    double to_double() const { return to_surd().to_double(); }
    /// log_q of the value; requires coeff > 0.
    double log_q() const {
        return std::log(scchar::to_double(coeff)) / std::log(static_cast<double>(q)) + 0.5 * half_exp;
    }
    friend QPower operator*(const QPower& x, const QPower& y) {
        return {x.q, x.coeff * y.coeff, x.half_exp + y.half_exp};
    }
    std::string str() const {
        const Surd s = to_surd();
        if (s.is_rational()) return format_rational(s.rational_part());
        return format_rational(coeff) + "*" + std::to_string(q) + "^(" + format_half(half_exp) + ")";
    }
};

inline QPower q_power(std::int64_t q, int half_exp) { return {q, Rational(1), half_exp}; }

}  // namespace scchar
