#pragma once

// Truncated p-adic arithmetic in k = Q_p and in its three quadratic
// extensions k(sqrt theta), theta in {eps, p, eps*p}.
//
// Values follow a capped-relative precision model: a nonzero scalar is
// p^val * unit with the unit known modulo p^rel (rel <= N). Additive
// cancellation lowers rel; total cancellation yields a zero that is only
// known modulo p^abs ("inexact zero"). Asking an inexact zero for its
// valuation raises PrecisionLoss.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "scchar/errors.hpp"

namespace scchar {

using i64 = std::int64_t;
using i128 = __int128;

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

namespace intmod {

inline i64 reduce(i64 a, i64 m) {
    const i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mul(i64 a, i64 b, i64 m) {
    return static_cast<i64>(reduce(static_cast<i64>((static_cast<i128>(a) * b) % m), m));
}

inline i64 pow(i64 base, i64 e, i64 m) {
    i64 result = 1 % m;
    base = reduce(base, m);
    while (e > 0) {
        if (e & 1) result = mul(result, base, m);
        base = mul(base, base, m);
        e >>= 1;
    }
    return result;
}

/// Inverse of a modulo m by the extended Euclidean algorithm.
inline i64 inverse(i64 a, i64 m) {
    i64 old_r = reduce(a, m), r = m;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        const i64 quotient = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - quotient * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - quotient * s);
    }
    if (old_r != 1) throw DivisionByZero("not invertible modulo " + std::to_string(m));
    return reduce(old_s, m);
}

/// p^k as a checked 64-bit integer.
inline i64 ipow(i64 p, int k) {
    i64 result = 1;
    for (int i = 0; i < k; ++i) {
        if (result > std::numeric_limits<i64>::max() / p) throw DomainError("p^k overflows 64 bits");
        result *= p;
    }
    return result;
}

/// Largest k with p^k | n, for n != 0.
inline int valuation(i64 n, i64 p) {
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Square root of c modulo p^k congruent to root0 modulo p, by Newton
/// iteration. Requires root0^2 == c (mod p) and root0 a unit.
inline i64 sqrt_lift(i64 c, i64 root0, i64 p, int k) {
    const i64 m = ipow(p, k);
    c = reduce(c, m);
    i64 a = reduce(root0, m);
    if (reduce(mul(a, a, p) - c, p) != 0 || a % p == 0) throw DomainError("sqrt_lift: bad residue root");
    for (int bits = 1; bits < k; bits *= 2) {
        const i64 f = reduce(mul(a, a, m) - c, m);
        a = reduce(a - mul(f, inverse(reduce(2 * a, m), m), m), m);
    }
    if (k > 1) {
        const i64 f = reduce(mul(a, a, m) - c, m);
        a = reduce(a - mul(f, inverse(reduce(2 * a, m), m), m), m);
    }
    return a;
}

}  // namespace intmod

/// Legendre symbol (u / p) by Euler's criterion.
inline int legendre(i64 u, i64 p) {
    const i64 r = intmod::reduce(u, p);
    if (r == 0) return 0;
    return intmod::pow(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Square root of a nonzero square residue modulo p (brute force; p is small).
inline i64 sqrt_mod_p(i64 u, i64 p) {
    u = intmod::reduce(u, p);
    for (i64 x = 1; x < p; ++x)
        if (intmod::mul(x, x, p) == u) return x;
    throw DomainError("sqrt_mod_p: not a square");
}

/// Working field data: residue characteristic p, precision N, and the fixed
/// non-residue eps (least positive non-square modulo p).
class FieldContext {
public:
    FieldContext(i64 p, int precision) : p_(p), precision_(precision) {
        if (!intmod::is_prime(p) || p < 5) throw ConfigError("p must be a prime >= 5, got " + std::to_string(p));
        if (precision < 1) throw ConfigError("precision must be >= 1");
        powers_.push_back(1);
        for (int k = 1; k <= precision; ++k) {
            if (powers_.back() > (i64{1} << 62) / p) throw ConfigError("p^N must stay below 2^62");
            powers_.push_back(powers_.back() * p);
        }
        for (i64 e = 2; e < p; ++e) {
            if (legendre(e, p) == -1) {
                epsilon_ = e;
                break;
            }
        }
    }

    i64 p() const { return p_; }
    i64 q() const { return p_; }
    int precision() const { return precision_; }
    i64 epsilon() const { return epsilon_; }
    i64 modulus() const { return powers_.back(); }
    i64 power(int k) const {
        if (k < 0 || k > precision_) throw PrecisionLoss("p^" + std::to_string(k) + " exceeds working precision");
        return powers_[static_cast<std::size_t>(k)];
    }
    bool minus_one_is_square() const { return legendre(-1, p_) == 1; }

    friend bool operator==(const FieldContext& a, const FieldContext& b) {
        return a.p_ == b.p_ && a.precision_ == b.precision_;
    }

private:
    i64 p_;
    int precision_;
    i64 epsilon_ = 0;
    std::vector<i64> powers_;
};

class PadicScalar {
public:
    static PadicScalar zero(const FieldContext& ctx) { return PadicScalar(ctx.p(), ctx.precision()); }

    static PadicScalar from_integer(const FieldContext& ctx, i64 n) { return from_integer(ctx.p(), ctx.precision(), n); }

    static PadicScalar from_integer(i64 p, int cap, i64 n) {
        if (n == 0) return PadicScalar(p, cap);
        const int v = intmod::valuation(n, p);
        i64 u = n;
        for (int i = 0; i < v; ++i) u /= p;
        return make(p, cap, v, u, cap);
    }

    /// An integer in the same field as this value.
    PadicScalar integer(i64 n) const { return from_integer(p_, cap_, n); }

    /// p^val * unit with the unit known to `relative_precision` digits (default N).
    static PadicScalar from_parts(const FieldContext& ctx, int val, i64 unit, int relative_precision = -1) {
        if (unit % ctx.p() == 0) throw DomainError("unit part divisible by p");
        const int rel = relative_precision < 0 ? ctx.precision() : relative_precision;
        if (rel < 1 || rel > ctx.precision()) throw DomainError("relative precision out of range");
        return make(ctx.p(), ctx.precision(), val, unit, rel);
    }

    bool is_zero() const { return val_ == kInfiniteValuation; }
    bool is_exact_zero() const { return is_zero() && abs_ == kInfiniteValuation; }

    int valuation() const {
        if (is_zero() && !is_exact_zero()) throw PrecisionLoss("valuation of a value indistinguishable from zero");
        return val_;
    }
    i64 unit() const {
        if (is_exact_zero()) throw UndefinedForZero("unit of zero");
        if (is_zero()) throw PrecisionLoss("unit of a value indistinguishable from zero");
        return unit_;
    }
    int relative_precision() const { return rel_; }
    int absolute_precision() const {
        if (is_zero()) return abs_;
        return val_ + rel_;
    }
    i64 prime() const { return p_; }
    int cap() const { return cap_; }

    /// Unit part modulo p.
    i64 residue_unit() const { return unit() % p_; }

    /// The value as an integer modulo p^k; requires nonnegative valuation
    /// and absolute precision >= k.
    i64 to_integer_mod(int k) const {
        if (k == 0) return 0;
        if (is_zero()) {
            if (abs_ < k) throw PrecisionLoss("zero known only modulo p^" + std::to_string(abs_));
            return 0;
        }
        if (val_ < 0) throw DomainError("to_integer_mod on a non-integral value");
        if (val_ >= k) return 0;
        if (absolute_precision() < k) throw PrecisionLoss("value known only modulo p^" + std::to_string(absolute_precision()));
        const i64 m = intmod::ipow(p_, k);
        return intmod::mul(intmod::ipow(p_, val_), unit_ % intmod::ipow(p_, k - val_), m);
    }

    PadicScalar operator-() const {
        if (is_zero()) return *this;
        const i64 m = intmod::ipow(p_, rel_);
        return make(p_, cap_, val_, m - unit_, rel_);
    }

    friend PadicScalar operator+(const PadicScalar& x, const PadicScalar& y) {
        check_same(x, y);
        if (x.is_zero()) return y.truncated(x.abs_);
        if (y.is_zero()) return x.truncated(y.abs_);
        const PadicScalar& lo = x.val_ <= y.val_ ? x : y;
        const PadicScalar& hi = x.val_ <= y.val_ ? y : x;
        const int d = hi.val_ - lo.val_;
        const int m = std::min(lo.rel_, d + hi.rel_);
        const i64 pm = intmod::ipow(lo.p_, m);
        i64 s = lo.unit_ % pm;
        if (d < m) s = intmod::reduce(s + intmod::mul(intmod::ipow(lo.p_, d), hi.unit_ % pm, pm), pm);
        if (s == 0) return inexact_zero(lo.p_, lo.cap_, lo.val_ + m);
        const int k = intmod::valuation(s, lo.p_);
        return make(lo.p_, lo.cap_, lo.val_ + k, s / intmod::ipow(lo.p_, k), m - k);
    }

    friend PadicScalar operator-(const PadicScalar& x, const PadicScalar& y) { return x + (-y); }

    friend PadicScalar operator*(const PadicScalar& x, const PadicScalar& y) {
        check_same(x, y);
        if (x.is_exact_zero() || y.is_exact_zero()) return PadicScalar(x.p_, x.cap_);
        if (x.is_zero() || y.is_zero()) {
            const int ax = x.absolute_precision();
            const int ay = y.absolute_precision();
            const int shift = (x.is_zero() ? 0 : x.val_) + (y.is_zero() ? 0 : y.val_);
            const int base = x.is_zero() && y.is_zero() ? ax + ay : (x.is_zero() ? ax : ay);
            return inexact_zero(x.p_, x.cap_, base + (x.is_zero() && y.is_zero() ? 0 : shift));
        }
        const int rel = std::min(x.rel_, y.rel_);
        const i64 m = intmod::ipow(x.p_, rel);
        return make(x.p_, x.cap_, x.val_ + y.val_, intmod::mul(x.unit_ % m, y.unit_ % m, m), rel);
    }

    PadicScalar inverse() const {
        if (is_exact_zero()) throw DivisionByZero("inverse of zero");
        if (is_zero()) throw PrecisionLoss("inverse of a value indistinguishable from zero");
        const i64 m = intmod::ipow(p_, rel_);
        return make(p_, cap_, -val_, intmod::inverse(unit_, m), rel_);
    }

    friend PadicScalar operator/(const PadicScalar& x, const PadicScalar& y) { return x * y.inverse(); }

    /// Equal within the available precision.
    friend bool operator==(const PadicScalar& x, const PadicScalar& y) { return (x - y).is_zero(); }
    friend bool operator!=(const PadicScalar& x, const PadicScalar& y) { return !(x == y); }

    std::string str() const {
        if (is_exact_zero()) return "0";
        if (is_zero()) return "O(" + std::to_string(p_) + "^" + std::to_string(abs_) + ")";
        return std::to_string(p_) + "^" + std::to_string(val_) + "*" + std::to_string(unit_) + " + O(" +
               std::to_string(p_) + "^" + std::to_string(absolute_precision()) + ")";
    }

private:
    PadicScalar(i64 p, int cap) : p_(p), cap_(cap) {}

    static PadicScalar make(i64 p, int cap, int val, i64 unit, int rel) {
        PadicScalar r(p, cap);
        r.val_ = val;
        r.rel_ = rel;
        r.unit_ = intmod::reduce(unit, intmod::ipow(p, rel));
        r.abs_ = val + rel;
        return r;
    }

    static PadicScalar inexact_zero(i64 p, int cap, int abs) {
        PadicScalar r(p, cap);
        r.abs_ = abs;
        return r;
    }

    /// Drops digits beyond absolute precision `abs`.
    PadicScalar truncated(int abs) const {
        if (abs == kInfiniteValuation) return *this;
        if (is_zero()) return inexact_zero(p_, cap_, std::min(abs_, abs));
        if (val_ >= abs) return inexact_zero(p_, cap_, abs);
        const int rel = std::min(rel_, abs - val_);
        return make(p_, cap_, val_, unit_, rel);
    }

    static void check_same(const PadicScalar& x, const PadicScalar& y) {
        if (x.p_ != y.p_) throw DomainError("operands over different primes");
    }

    i64 p_;
    int cap_;
    int val_ = kInfiniteValuation;
    i64 unit_ = 0;
    int rel_ = 0;
    int abs_ = kInfiniteValuation;
};

/// True iff x is a square in Q_p (p odd): even valuation and square unit residue.
inline bool is_square(const PadicScalar& x) {
    if (x.is_zero()) throw UndefinedForZero("is_square of zero");
    return x.valuation() % 2 == 0 && legendre(x.residue_unit(), x.prime()) == 1;
}

enum class ThetaLabel { eps, pi, eps_pi };

inline constexpr ThetaLabel kAllThetas[] = {ThetaLabel::eps, ThetaLabel::pi, ThetaLabel::eps_pi};

inline std::string to_string(ThetaLabel t) {
    switch (t) {
        case ThetaLabel::eps: return "eps";
        case ThetaLabel::pi: return "pi";
        case ThetaLabel::eps_pi: return "eps_pi";
    }
    return "?";
}

inline ThetaLabel parse_theta(const std::string& s) {
    if (s == "eps") return ThetaLabel::eps;
    if (s == "pi") return ThetaLabel::pi;
    if (s == "eps_pi") return ThetaLabel::eps_pi;
    throw ConfigError("unknown theta label '" + s + "'");
}

inline bool is_ramified(ThetaLabel t) { return t != ThetaLabel::eps; }

/// Twice the valuation of theta.
inline int theta_val2(ThetaLabel t) { return is_ramified(t) ? 1 : 0; }

/// theta as an integer: eps, p or eps*p.
inline i64 theta_integer(const FieldContext& ctx, ThetaLabel t) {
    switch (t) {
        case ThetaLabel::eps: return ctx.epsilon();
        case ThetaLabel::pi: return ctx.p();
        case ThetaLabel::eps_pi: return ctx.epsilon() * ctx.p();
    }
    return 0;
}

/// a + b*sqrt(theta) in k_theta.
class QuadExtScalar {
public:
    QuadExtScalar(const FieldContext& ctx, ThetaLabel theta, PadicScalar a, PadicScalar b)
        : theta_(theta),
          theta_value_(PadicScalar::from_integer(ctx, theta_integer(ctx, theta))),
          a_(std::move(a)),
          b_(std::move(b)) {}

    static QuadExtScalar from_integers(const FieldContext& ctx, ThetaLabel theta, i64 a, i64 b) {
        return {ctx, theta, PadicScalar::from_integer(ctx, a), PadicScalar::from_integer(ctx, b)};
    }

    /// n + 0*sqrt(theta) in the same extension.
    QuadExtScalar integer(i64 n) const { return with(a_.integer(n), a_.integer(0)); }

    ThetaLabel theta() const { return theta_; }
    const PadicScalar& a() const { return a_; }
    const PadicScalar& b() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    /// Twice the valuation: min(2 v(a), 2 v(b) + v2(theta)).
    int val2() const {
        int known = kInfiniteValuation;
        int floor = kInfiniteValuation;  // lower bound contributed by inexact zeros
        auto consider = [&](const PadicScalar& c, int offset) {
            if (c.is_exact_zero()) return;
            if (c.is_zero()) {
                floor = std::min(floor, 2 * c.absolute_precision() + offset);
                return;
            }
            known = std::min(known, 2 * c.valuation() + offset);
        };
        consider(a_, 0);
        consider(b_, theta_val2(theta_));
        if (known == kInfiniteValuation && floor == kInfiniteValuation) return kInfiniteValuation;
        if (known >= floor) throw PrecisionLoss("valuation of an extension element below precision");
        return known;
    }

    PadicScalar norm() const { return a_ * a_ - theta_value_ * b_ * b_; }
    PadicScalar trace() const { return a_ + a_; }
    QuadExtScalar conj() const { return with(a_, -b_); }

    QuadExtScalar operator-() const { return with(-a_, -b_); }

    friend QuadExtScalar operator+(const QuadExtScalar& x, const QuadExtScalar& y) {
        check_same(x, y);
        return x.with(x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadExtScalar operator-(const QuadExtScalar& x, const QuadExtScalar& y) { return x + (-y); }
    friend QuadExtScalar operator*(const QuadExtScalar& x, const QuadExtScalar& y) {
        check_same(x, y);
        return x.with(x.a_ * y.a_ + x.theta_value_ * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
    }
    QuadExtScalar scaled(const PadicScalar& c) const { return with(a_ * c, b_ * c); }

    QuadExtScalar inverse() const {
        const PadicScalar n = norm();
        if (n.is_exact_zero()) throw DivisionByZero("inverse of zero in k_theta");
        return conj().scaled(n.inverse());
    }

    friend bool operator==(const QuadExtScalar& x, const QuadExtScalar& y) {
        return x.theta_ == y.theta_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    std::string str() const { return "(" + a_.str() + ") + (" + b_.str() + ")*sqrt(" + to_string(theta_) + ")"; }

private:
    QuadExtScalar with(PadicScalar a, PadicScalar b) const {
        QuadExtScalar r = *this;
        r.a_ = std::move(a);
        r.b_ = std::move(b);
        return r;
    }
    static void check_same(const QuadExtScalar& x, const QuadExtScalar& y) {
        if (x.theta_ != y.theta_) throw DomainError("extension operands with different theta");
    }

    ThetaLabel theta_;
    PadicScalar theta_value_;
    PadicScalar a_;
    PadicScalar b_;
};

}  // namespace scchar
