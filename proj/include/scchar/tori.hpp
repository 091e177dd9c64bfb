#pragma once

// Maximal tori of SL(2, Q_p): elliptic classes T^{theta,eta} (norm-one groups
// of quadratic extensions) and the split torus, with depth, singular depth
// and Weyl discriminant of their regular elements.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scchar/exact.hpp"
#include "scchar/padic.hpp"

namespace scchar {

enum class EtaLabel { none, one, pi, eps };

inline std::string to_string(EtaLabel e) {
    switch (e) {
        case EtaLabel::none: return "";
        case EtaLabel::one: return "1";
        case EtaLabel::pi: return "pi";
        case EtaLabel::eps: return "eps";
    }
    return "?";
}

struct TorusClass {
    std::optional<ThetaLabel> theta;  // nullopt: split torus
    EtaLabel eta = EtaLabel::none;

    static TorusClass split() { return {}; }
    static TorusClass elliptic(ThetaLabel t, EtaLabel e) { return {t, e}; }

    bool is_split() const { return !theta.has_value(); }
    bool is_elliptic() const { return theta.has_value(); }
    bool is_unramified() const { return theta == ThetaLabel::eps; }
    bool is_ramified() const { return theta.has_value() && scchar::is_ramified(*theta); }

    /// "split", "eps:1", "pi:eps", ... (comma-free, used in CSV output).
    std::string label() const {
        if (is_split()) return "split";
        return to_string(*theta) + ":" + to_string(eta);
    }

    auto operator<=>(const TorusClass&) const = default;
};

/// Elliptic classes in canonical order: unramified first, then ramified.
inline std::vector<TorusClass> elliptic_classes(const FieldContext& ctx) {
    std::vector<TorusClass> out = {
        TorusClass::elliptic(ThetaLabel::eps, EtaLabel::one),
        TorusClass::elliptic(ThetaLabel::eps, EtaLabel::pi),
        TorusClass::elliptic(ThetaLabel::pi, EtaLabel::one),
        TorusClass::elliptic(ThetaLabel::eps_pi, EtaLabel::one),
    };
    if (!ctx.minus_one_is_square()) {
        out.push_back(TorusClass::elliptic(ThetaLabel::pi, EtaLabel::eps));
        out.push_back(TorusClass::elliptic(ThetaLabel::eps_pi, EtaLabel::eps));
    }
    return out;
}

/// All conjugacy classes of maximal tori: the elliptic ones followed by split.
inline std::vector<TorusClass> legal_classes(const FieldContext& ctx) {
    auto out = elliptic_classes(ctx);
    out.push_back(TorusClass::split());
    return out;
}

inline TorusClass parse_class(const std::string& label) {
    if (label == "split") return TorusClass::split();
    const auto colon = label.find(':');
    if (colon == std::string::npos) throw ConfigError("bad torus class label '" + label + "'");
    const ThetaLabel t = parse_theta(label.substr(0, colon));
    const std::string e = label.substr(colon + 1);
    EtaLabel eta;
    if (e == "1") eta = EtaLabel::one;
    else if (e == "pi") eta = EtaLabel::pi;
    else if (e == "eps") eta = EtaLabel::eps;
    else throw ConfigError("bad eta in torus class label '" + label + "'");
    return TorusClass::elliptic(t, eta);
}

/// a + b sqrt(theta) with norm 1 at the working precision.
class NormOneElement {
public:
    explicit NormOneElement(QuadExtScalar x) : x_(std::move(x)) {
        if (x_.norm() != x_.a().integer(1)) throw DomainError("element does not have norm one");
    }

    const QuadExtScalar& value() const { return x_; }
    ThetaLabel theta() const { return x_.theta(); }

    NormOneElement inverse() const { return NormOneElement(x_.conj(), Trusted{}); }
    NormOneElement operator-() const { return NormOneElement(-x_, Trusted{}); }
    friend NormOneElement operator*(const NormOneElement& x, const NormOneElement& y) {
        return NormOneElement(x.x_ * y.x_, Trusted{});
    }

private:
    struct Trusted {};
    NormOneElement(QuadExtScalar x, Trusted) : x_(std::move(x)) {}

    QuadExtScalar x_;
};

/// A torus element tagged with its class: lambda in k^1_theta for elliptic
/// classes, the eigenvalue of diag(lambda, lambda^-1) for the split class.
class TorusElement {
public:
    static TorusElement elliptic(TorusClass cls, NormOneElement lambda) {
        if (!cls.is_elliptic() || *cls.theta != lambda.theta()) throw DomainError("class/element theta mismatch");
        return TorusElement(cls, std::move(lambda));
    }

    static TorusElement split(PadicScalar lambda) {
        if (lambda.is_zero()) throw DomainError("split eigenvalue must be nonzero");
        return TorusElement(TorusClass::split(), std::move(lambda));
    }

    const TorusClass& torus_class() const { return cls_; }
    bool is_split() const { return cls_.is_split(); }
    i64 prime() const { return is_split() ? split_value().prime() : elliptic_value().value().a().prime(); }

    const NormOneElement& elliptic_value() const {
        if (is_split()) throw DomainError("split element has no norm-one value");
        return std::get<NormOneElement>(lambda_);
    }
    const PadicScalar& split_value() const {
        if (!is_split()) throw DomainError("elliptic element has no split eigenvalue");
        return std::get<PadicScalar>(lambda_);
    }

    TorusElement negated() const {
        if (is_split()) return TorusElement(cls_, -split_value());
        return TorusElement(cls_, -elliptic_value());
    }
    TorusElement inverse() const {
        if (is_split()) return TorusElement(cls_, split_value().inverse());
        return TorusElement(cls_, elliptic_value().inverse());
    }

    std::string str() const {
        return cls_.label() + "[" + (is_split() ? split_value().str() : elliptic_value().value().str()) + "]";
    }

private:
    TorusElement(TorusClass cls, std::variant<NormOneElement, PadicScalar> lambda)
        : cls_(cls), lambda_(std::move(lambda)) {}

    TorusClass cls_;
    std::variant<NormOneElement, PadicScalar> lambda_;
};

/// Depths in half-units (value 2*d). For split elements d is the depth
/// min(v(lambda - 1), v(lambda^-1 - 1)), which is -|v(lambda)| off the
/// maximal compact subgroup.
struct DepthData {
    int d2 = 0;
    int d_minus2 = 0;
    int d_plus2 = 0;
    int sd2 = 0;

    bool operator==(const DepthData&) const = default;
};

namespace detail {

inline int checked_val2(const QuadExtScalar& x, int cap) {
    int v = 0;
    try {
        v = x.val2();
    } catch (const PrecisionLoss&) {
        throw NotRegular("element indistinguishable from central at precision " + std::to_string(cap));
    }
    if (v >= 2 * cap) throw NotRegular("element within p^" + std::to_string(cap) + " of the center");
    return v;
}

inline int checked_val(const PadicScalar& x, int cap) {
    if (x.is_zero()) throw NotRegular("element indistinguishable from central at precision " + std::to_string(cap));
    const int v = x.valuation();
    if (v >= cap) throw NotRegular("element within p^" + std::to_string(cap) + " of the center");
    return v;
}

}  // namespace detail

inline DepthData depth_data(const TorusElement& g) {
    DepthData dd;
    if (g.is_split()) {
        const PadicScalar& l = g.split_value();
        const int cap = l.cap();
        const PadicScalar one = l.integer(1);
        const PadicScalar li = l.inverse();
        const int up = detail::checked_val(l - one, cap);
        const int down = detail::checked_val(li - one, cap);
        const int up_m = detail::checked_val(l + one, cap);
        const int down_m = detail::checked_val(li + one, cap);
        const int s_pos = detail::checked_val(l * l - one, cap);
        const int s_neg = detail::checked_val(li * li - one, cap);
        dd.d2 = 2 * std::min(up, down);
        dd.d_minus2 = 2 * std::min(up_m, down_m);
        dd.sd2 = 2 * std::max(s_pos, s_neg);
    } else {
        const QuadExtScalar& l = g.elliptic_value().value();
        const int cap = l.a().cap();
        const QuadExtScalar one = l.integer(1);
        dd.d2 = detail::checked_val2(l - one, cap);
        dd.d_minus2 = detail::checked_val2(l + one, cap);
        dd.sd2 = detail::checked_val2(l * l - one, cap);
    }
    dd.d_plus2 = std::max(dd.d2, dd.d_minus2);
    return dd;
}

/// D(gamma) = q^(-2 d_plus).
inline QPower discriminant_from_depth(i64 q, const DepthData& dd) { return {q, Rational(1), -2 * dd.d_plus2}; }

/// D(gamma) from |det(Ad(gamma) - 1)| on g/t: |2 - lambda^2 - lambda^-2|
/// (elliptic) or |(1 - lambda^2)(1 - lambda^-2)| (split).
inline QPower adjoint_discriminant(const TorusElement& g) {
    PadicScalar t = g.is_split() ? g.split_value() : g.elliptic_value().value().a();
    if (g.is_split()) {
        const PadicScalar& l = g.split_value();
        const PadicScalar one = l.integer(1);
        const PadicScalar li = l.inverse();
        t = (one - l * l) * (one - li * li);
    } else {
        const QuadExtScalar& l = g.elliptic_value().value();
        t = l.a().integer(2) - (l * l).trace();
    }
    if (t.is_zero()) throw NotRegular("adjoint discriminant indistinguishable from zero");
    return {g.prime(), Rational(1), -2 * t.valuation()};
}

/// Weyl discriminant q^(-2 d_plus); the adjoint evaluation must agree.
inline QPower weyl_discriminant(const TorusElement& g) {
    const QPower d = discriminant_from_depth(g.prime(), depth_data(g));
    const QPower adj = adjoint_discriminant(g);
    if (adj.half_exp != d.half_exp) throw DomainError("discriminant evaluations disagree for " + g.str());
    return d;
}

/// Key sizes of k^1_theta / (k^1_theta)_{r+}: x ~ y iff a = a' mod p^ka and
/// b = b' mod p^kb. r2 is the depth in half-units.
struct QuotientLevel {
    int ka = 0;
    int kb = 0;
};

inline int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

inline QuotientLevel quotient_level(ThetaLabel t, int r2) {
    if (r2 < 0) throw DomainError("negative depth");
    return {floor_div(r2, 2) + 1, floor_div(r2 - theta_val2(t), 2) + 1};
}

/// The norm-one element whose free coordinate is `free_value`; the other
/// coordinate is Hensel-lifted from `root0` modulo p. `free_is_b` selects
/// which coordinate is free.
inline NormOneElement lift_norm_one(const FieldContext& ctx, ThetaLabel t, bool free_is_b, i64 free_value, i64 root0) {
    const i64 p = ctx.p();
    const int n = ctx.precision();
    const i64 m = ctx.modulus();
    const i64 th = theta_integer(ctx, t);
    if (free_is_b) {
        // a^2 = 1 + theta b^2
        const i64 c = intmod::reduce(1 + intmod::mul(th, intmod::mul(free_value, free_value, m), m), m);
        const i64 a = intmod::sqrt_lift(c, root0, p, n);
        return NormOneElement(QuadExtScalar::from_integers(ctx, t, a, free_value));
    }
    // b^2 = (a^2 - 1) / eps  (unramified only)
    const i64 c = intmod::mul(intmod::reduce(intmod::mul(free_value, free_value, m) - 1, m), intmod::inverse(th, m), m);
    const i64 b = intmod::sqrt_lift(c, root0, p, n);
    return NormOneElement(QuadExtScalar::from_integers(ctx, t, free_value, b));
}

/// Residue solutions of a^2 - theta b^2 = 1 modulo p.
inline std::vector<std::pair<i64, i64>> residue_norm_one(const FieldContext& ctx, ThetaLabel t) {
    const i64 p = ctx.p();
    const i64 th = intmod::reduce(theta_integer(ctx, t), p);
    std::vector<std::pair<i64, i64>> out;
    for (i64 a = 0; a < p; ++a)
        for (i64 b = 0; b < p; ++b)
            if (intmod::reduce(a * a - th * b * b, p) == 1) out.emplace_back(a, b);
    return out;
}

/// One norm-one representative per coset of (k^1_theta)_{r+} in k^1_theta.
inline std::vector<NormOneElement> enumerate_norm_one(const FieldContext& ctx, ThetaLabel t, int r2) {
    const QuotientLevel lv = quotient_level(t, r2);
    if (lv.ka > ctx.precision() - 1) throw PrecisionLoss("quotient depth too large for working precision");
    const i64 p = ctx.p();
    std::vector<NormOneElement> out;
    std::set<std::pair<i64, i64>> seen;
    auto push = [&](NormOneElement x) {
        const auto key = std::make_pair(x.value().a().to_integer_mod(lv.ka), x.value().b().to_integer_mod(lv.kb));
        if (seen.insert(key).second) out.push_back(std::move(x));
    };
    if (!is_ramified(t)) {
        const i64 span = intmod::ipow(p, lv.kb - 1);  // lifts of a residue
        for (const auto& [a0, b0] : residue_norm_one(ctx, t)) {
            const bool free_is_b = a0 != 0;
            const i64 base = free_is_b ? b0 : a0;
            const i64 root0 = free_is_b ? a0 : b0;
            for (i64 j = 0; j < span; ++j) push(lift_norm_one(ctx, t, free_is_b, base + p * j, root0));
        }
    } else {
        const i64 span = intmod::ipow(p, lv.kb);
        for (i64 sign : {1, -1})
            for (i64 b = 0; b < span; ++b) push(lift_norm_one(ctx, t, true, b, intmod::reduce(sign, p)));
    }
    return out;
}

namespace detail {

/// Uniform integer in [0, m) by modular reduction of a 64-bit draw; portable
/// across standard libraries, unlike std::uniform_int_distribution.
inline i64 draw(std::mt19937_64& rng, i64 m) { return static_cast<i64>(rng() % static_cast<std::uint64_t>(m)); }

inline i64 draw_unit(std::mt19937_64& rng, i64 p, i64 m) {
    for (;;) {
        const i64 u = draw(rng, m);
        if (u % p != 0) return u;
    }
}

}  // namespace detail

/// A regular element of class `cls` with depth_data.d2 == d2, reproducible
/// from `seed`.
inline TorusElement random_element(const FieldContext& ctx, const TorusClass& cls, int d2, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const i64 p = ctx.p();
    const int n = ctx.precision();
    const i64 m = ctx.modulus();
    if (cls.is_split()) {
        if (d2 % 2 != 0) throw NoSuchElement("split depths are integers");
        const int d = d2 / 2;
        if (d >= n) throw NoSuchElement("depth exceeds working precision");
        if (d < 0) {
            // lambda = p^{-d} u, off the compact torus
            if (-d >= n) throw NoSuchElement("valuation exceeds working precision");
            return TorusElement::split(PadicScalar::from_parts(ctx, -d, detail::draw_unit(rng, p, m)));
        }
        if (d == 0) {
            // residue of lambda outside {0, 1, -1}
            const i64 r = 2 + detail::draw(rng, p - 3);
            const i64 lift = r + p * detail::draw(rng, m / p);
            return TorusElement::split(PadicScalar::from_integer(ctx, lift));
        }
        const i64 pd = ctx.power(d);
        const i64 u = detail::draw_unit(rng, p, m / pd);
        return TorusElement::split(PadicScalar::from_integer(ctx, 1 + pd * u));
    }
    const ThetaLabel t = *cls.theta;
    if (d2 < 0) throw NoSuchElement("elliptic depths are nonnegative");
    if (!is_ramified(t)) {
        if (d2 % 2 != 0) throw NoSuchElement("unramified depths are integers");
        const int d = d2 / 2;
        if (d >= n) throw NoSuchElement("depth exceeds working precision");
        if (d == 0) {
            // residue class with b != 0, so lambda is not congruent to +-1
            std::vector<std::pair<i64, i64>> res;
            for (const auto& ab : residue_norm_one(ctx, t))
                if (ab.second != 0) res.push_back(ab);
            const auto [a0, b0] = res[static_cast<std::size_t>(detail::draw(rng, static_cast<i64>(res.size())))];
            const bool free_is_b = a0 != 0;
            const i64 base = free_is_b ? b0 : a0;
            const i64 lift = base + p * detail::draw(rng, m / p);
            return TorusElement::elliptic(cls, lift_norm_one(ctx, t, free_is_b, lift, free_is_b ? a0 : b0));
        }
        const i64 pd = ctx.power(d);
        const i64 b = pd * detail::draw_unit(rng, p, m / pd);
        return TorusElement::elliptic(cls, lift_norm_one(ctx, t, true, b, 1));
    }
    // ramified: lambda = a + b sqrt(theta) with a = +-1 mod p
    if (d2 == 0) {
        const i64 b = detail::draw(rng, m);
        auto x = lift_norm_one(ctx, t, true, b, p - 1);
        if (x.value().b().is_zero()) x = lift_norm_one(ctx, t, true, 1, p - 1);
        return TorusElement::elliptic(cls, x);
    }
    if (d2 % 2 == 0) throw NoSuchElement("positive ramified depths are half-odd");
    const int vb = (d2 - 1) / 2;
    if (vb >= n - 1) throw NoSuchElement("depth exceeds working precision");
    const i64 pv = ctx.power(vb);
    const i64 b = pv * detail::draw_unit(rng, p, m / pv);
    return TorusElement::elliptic(cls, lift_norm_one(ctx, t, true, b, 1));
}

}  // namespace scchar
