#pragma once

// Characters of the finite quotients k^1_theta / (k^1_theta)_{r+},
// supercuspidal parameters of SL(2), their formal degrees, and the
// magnitudes D^{1/2} |Theta_pi(gamma)| of their characters.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scchar/abelian.hpp"
#include "scchar/exact.hpp"
#include "scchar/filtration.hpp"
#include "scchar/padic.hpp"
#include "scchar/rootdata.hpp"
#include "scchar/tori.hpp"

namespace scchar {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Q_r = k^1_theta / (k^1_theta)_{r+} with its invariant-factor
/// decomposition. Elements are integer keys a * p^kb + b for the residues
/// (a mod p^ka, b mod p^kb) of a + b sqrt(theta).
class TorusQuotient {
public:
    TorusQuotient(const FieldContext& ctx, ThetaLabel theta, int r2)
        : ctx_(ctx), theta_(theta), r2_(r2), level_(quotient_level(theta, r2)) {
        mod_a_ = intmod::ipow(ctx.p(), level_.ka);
        mod_b_ = intmod::ipow(ctx.p(), level_.kb);
        theta_mod_ = intmod::reduce(theta_integer(ctx, theta), mod_a_);

        const auto reps = enumerate_norm_one(ctx, theta, r2);
        std::vector<i64> keys;
        keys.reserve(reps.size());
        for (const auto& x : reps) keys.push_back(key_of(x));
        group_ = decompose_abelian(keys, encode(1 % mod_a_, 0), [this](i64 x, i64 y) { return mul_keys(x, y); });

        exponent_ = 1;
        for (i64 d : group_.orders) exponent_ = std::lcm(exponent_, d);

        const int need_a = (r2 + 1) / 2;  // ceil(r2 / 2)
        const int need_b = (r2 - theta_val2(theta) + 1) / 2;
        for (i64 k : keys) {
            const auto [a, b] = decode(k);
            const bool a_ok = need_a <= 0 || intmod::reduce(a - 1, intmod::ipow(ctx.p(), need_a)) == 0;
            const bool b_ok = need_b <= 0 || b % intmod::ipow(ctx.p(), need_b) == 0;
            if (a_ok && b_ok) depth_keys_.push_back(k);
        }

        // Residue-field parametrization of the ramified shell at odd r2:
        // X -> a + p^j X sqrt(theta), j = (r2 - 1) / 2.
        if (is_ramified(theta) && r2 % 2 == 1) {
            const int j = (r2 - 1) / 2;
            for (i64 x = 0; x < ctx.p(); ++x)
                shell_keys_.push_back(key_of(lift_norm_one(ctx, theta, true, ctx.power(j) * x, 1)));
        }
    }

    const FieldContext& context() const { return ctx_; }
    ThetaLabel theta() const { return theta_; }
    int r2() const { return r2_; }
    i64 order() const { return group_.order(); }
    const std::vector<i64>& orders() const { return group_.orders; }
    const std::vector<i64>& generator_keys() const { return group_.generator_keys; }
    i64 exponent() const { return exponent_; }
    i64 identity_key() const { return encode(1 % mod_a_, 0); }

    i64 key_of(const NormOneElement& x) const {
        if (x.theta() != theta_) throw DomainError("element from a different extension");
        return encode(x.value().a().to_integer_mod(level_.ka), x.value().b().to_integer_mod(level_.kb));
    }

    i64 mul_keys(i64 x, i64 y) const {
        const auto [a, b] = decode(x);
        const auto [c, d] = decode(y);
        const i64 na = intmod::reduce(intmod::mul(a, c, mod_a_) + intmod::mul(theta_mod_, intmod::mul(b, d, mod_a_), mod_a_), mod_a_);
        const i64 nb = intmod::reduce(intmod::mul(a, d, mod_b_) + intmod::mul(b, c, mod_b_), mod_b_);
        return encode(na, nb);
    }

    const std::vector<i64>& coords_of_key(i64 key) const {
        const auto it = group_.coords.find(key);
        if (it == group_.coords.end()) throw DomainError("key is not an element of the quotient");
        return it->second;
    }
    const std::vector<i64>& coords(const NormOneElement& x) const { return coords_of_key(key_of(x)); }

    /// Image of (k^1_theta)_r: the elements x with v(x - 1) >= r.
    const std::vector<i64>& depth_keys() const { return depth_keys_; }
    /// Shell keys indexed by X in F_q (ramified theta, odd r2 only).
    const std::vector<i64>& shell_keys() const { return shell_keys_; }
    std::vector<i64> all_keys() const {
        std::vector<i64> out;
        out.reserve(group_.coords.size());
        for (const auto& kv : group_.coords) out.push_back(kv.first);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    i64 encode(i64 a, i64 b) const { return a * mod_b_ + b; }
    std::pair<i64, i64> decode(i64 k) const { return {k / mod_b_, k % mod_b_}; }

    FieldContext ctx_;
    ThetaLabel theta_;
    int r2_;
    QuotientLevel level_;
    i64 mod_a_ = 1;
    i64 mod_b_ = 1;
    i64 theta_mod_ = 0;
    i64 exponent_ = 1;
    AbelianDecomposition group_;
    std::vector<i64> depth_keys_;
    std::vector<i64> shell_keys_;
};

using QuotientPtr = std::shared_ptr<const TorusQuotient>;

/// Builds each quotient once per (p, N, theta, r2); safe to share between threads.
class QuotientCache {
public:
    QuotientPtr get(const FieldContext& ctx, ThetaLabel theta, int r2) {
        const auto key = std::make_tuple(ctx.p(), ctx.precision(), static_cast<int>(theta), r2);
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        auto q = std::make_shared<const TorusQuotient>(ctx, theta, r2);
        cache_.emplace(key, q);
        return q;
    }

private:
    std::mutex mu_;
    std::map<std::tuple<i64, int, int, int>, QuotientPtr> cache_;
};

/// A character of Q_r: value exp(2 pi i sum_j m_j c_j / d_j) on the element
/// with coordinates c.
class QuasiCharacter {
public:
    QuasiCharacter(QuotientPtr q, std::vector<i64> exponents) : q_(std::move(q)), m_(std::move(exponents)) {
        if (m_.size() != q_->orders().size()) throw DomainError("exponent tuple has the wrong length");
        for (std::size_t j = 0; j < m_.size(); ++j) m_[j] = intmod::reduce(m_[j], q_->orders()[j]);
    }

    const TorusQuotient& quotient() const { return *q_; }
    const QuotientPtr& quotient_ptr() const { return q_; }
    ThetaLabel theta() const { return q_->theta(); }
    int r2() const { return q_->r2(); }
    const std::vector<i64>& exponents() const { return m_; }

    /// Numerator of the phase over the group exponent L: value = exp(2 pi i n / L).
    i64 phase_numerator(const std::vector<i64>& c) const {
        const i64 L = q_->exponent();
        i64 s = 0;
        for (std::size_t j = 0; j < m_.size(); ++j) s = intmod::reduce(s + intmod::mul(m_[j] * (L / q_->orders()[j]), c[j], L), L);
        return s;
    }
    Rational phase_of_key(i64 key) const { return Rational(phase_numerator(q_->coords_of_key(key)), q_->exponent()); }
    Rational phase(const NormOneElement& x) const { return phase_of_key(q_->key_of(x)); }

    std::complex<double> value_of_key(i64 key) const {
        const double t = kTwoPi * static_cast<double>(phase_numerator(q_->coords_of_key(key))) / static_cast<double>(q_->exponent());
        return {std::cos(t), std::sin(t)};
    }
    std::complex<double> value(const NormOneElement& x) const { return value_of_key(q_->key_of(x)); }

    /// Order of the character in the dual group.
    i64 order() const {
        i64 o = 1;
        for (std::size_t j = 0; j < m_.size(); ++j) {
            const i64 d = q_->orders()[j];
            o = std::lcm(o, d / std::gcd(m_[j], d));
        }
        return o;
    }
    bool is_trivial() const { return order() == 1; }

    /// Nontrivial on the image of (k^1_theta)_r.
    bool has_exact_depth() const {
        for (i64 k : q_->depth_keys())
            if (phase_numerator(q_->coords_of_key(k)) != 0) return true;
        return false;
    }

    QuasiCharacter inverse() const {
        std::vector<i64> m = m_;
        for (std::size_t j = 0; j < m.size(); ++j) m[j] = intmod::reduce(-m[j], q_->orders()[j]);
        return QuasiCharacter(q_, std::move(m));
    }

    friend bool operator==(const QuasiCharacter& x, const QuasiCharacter& y) { return x.q_ == y.q_ && x.m_ == y.m_; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t j = 0; j < m_.size(); ++j)
            s += (j ? " " : "") + std::to_string(m_[j]) + "/" + std::to_string(q_->orders()[j]);
        return s + ")";
    }

private:
    QuotientPtr q_;
    std::vector<i64> m_;
};

/// All characters of Q_r in lexicographic exponent order; with
/// `exact_depth`, only those nontrivial on the image of (k^1_theta)_r.
inline std::vector<QuasiCharacter> enumerate_characters(const QuotientPtr& q, bool exact_depth) {
    std::vector<QuasiCharacter> out;
    const auto& d = q->orders();
    std::vector<i64> m(d.size(), 0);
    for (;;) {
        QuasiCharacter chi(q, m);
        if (!exact_depth || chi.has_exact_depth()) out.push_back(std::move(chi));
        std::size_t j = d.size();
        while (j > 0) {
            --j;
            if (++m[j] < d[j]) break;
            m[j] = 0;
            if (j == 0) return out;
        }
        if (d.empty()) return out;
    }
}

enum class ParameterKind { unramified, ramified, exceptional };

inline std::string to_string(ParameterKind k) {
    switch (k) {
        case ParameterKind::unramified: return "unramified";
        case ParameterKind::ramified: return "ramified";
        case ParameterKind::exceptional: return "exceptional";
    }
    return "?";
}

struct SupercuspidalParameter {
    TorusClass cls;
    QuasiCharacter phi;
    int sign = 1;
    ParameterKind kind = ParameterKind::unramified;

    int r2() const { return phi.r2(); }
    i64 q() const { return phi.quotient().context().q(); }
};

/// Validates (T, phi, sign) and derives its kind.
inline SupercuspidalParameter make_parameter(const TorusClass& cls, const QuasiCharacter& phi, int sign) {
    if (!cls.is_elliptic() || *cls.theta != phi.theta()) throw DomainError("character and torus class disagree on theta");
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    if (!phi.has_exact_depth()) throw DomainError("character does not have exact depth " + format_half(phi.r2()));
    const i64 ord = phi.order();
    if (cls.is_unramified() && phi.r2() == 0 && ord == 2) return {cls, phi, sign, ParameterKind::exceptional};
    if (ord <= 2) throw DomainError("character with phi^2 = 1 is not a supercuspidal parameter");
    return {cls, phi, sign, cls.is_unramified() ? ParameterKind::unramified : ParameterKind::ramified};
}

/// Parameters on class `cls` at depth r2, ordered by character then sign.
/// With `dedupe_inverse`, phi and phi^{-1} (same representation) appear once.
inline std::vector<SupercuspidalParameter> enumerate_parameters(QuotientCache& cache, const FieldContext& ctx,
                                                                const TorusClass& cls, int r2,
                                                                bool dedupe_inverse = true) {
    std::vector<SupercuspidalParameter> out;
    if (!cls.is_elliptic()) return out;
    const auto q = cache.get(ctx, *cls.theta, r2);
    for (const auto& phi : enumerate_characters(q, true)) {
        const i64 ord = phi.order();
        const bool exceptional = cls.is_unramified() && r2 == 0 && ord == 2;
        if (ord <= 2 && !exceptional) continue;
        if (dedupe_inverse && phi.inverse().exponents() < phi.exponents()) continue;
        for (int sign : {1, -1}) out.push_back(make_parameter(cls, phi, sign));
    }
    return out;
}

/// q^r (unramified), (q+1)/2 q^{r-1/2} (ramified), 1/2 (exceptional).
inline QPower formal_degree(ParameterKind kind, i64 q, int r2) {
    switch (kind) {
        case ParameterKind::unramified: return {q, Rational(1), r2};
        case ParameterKind::ramified: return {q, Rational(q + 1, 2), r2 - 1};
        case ParameterKind::exceptional: return {q, Rational(1, 2), 0};
    }
    return {};
}

inline QPower formal_degree(const SupercuspidalParameter& param) { return formal_degree(param.kind, param.q(), param.r2()); }

/// Haar measure of SL(2, O): (q^2 - 1) / q^{1/2}.
inline QPower vol_sl2_integers(i64 q) { return {q, Rational(q * q - 1), -1}; }

enum class ValueKind { exact, upper_bound, zero };

inline std::string to_string(ValueKind k) {
    switch (k) {
        case ValueKind::exact: return "exact";
        case ValueKind::upper_bound: return "upper_bound";
        case ValueKind::zero: return "zero";
    }
    return "?";
}

enum class CaseTag {
    own_torus,             // |phi(gamma) + phi(gamma^-1)|
    unramified_near,       // 1 +- deg D^{1/2}
    split_near,            // 1 - deg D^{1/2}
    generic_near,          // deg D^{1/2}
    ramified_interior,     // <= 2
    ramified_own_shell,    // <= 1 + |A|
    ramified_other_shell,  // <= 1
    ramified_near,         // <= 1 + deg D^{1/2}
    ramified_generic,      // <= deg D^{1/2}
    exceptional_support,   // <= (1 + D^{1/2}) / 2
    vanishing,
};

inline std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::own_torus: return "own_torus";
        case CaseTag::unramified_near: return "unramified_near";
        case CaseTag::split_near: return "split_near";
        case CaseTag::generic_near: return "generic_near";
        case CaseTag::ramified_interior: return "ramified_interior";
        case CaseTag::ramified_own_shell: return "ramified_own_shell";
        case CaseTag::ramified_other_shell: return "ramified_other_shell";
        case CaseTag::ramified_near: return "ramified_near";
        case CaseTag::ramified_generic: return "ramified_generic";
        case CaseTag::exceptional_support: return "exceptional_support";
        case CaseTag::vanishing: return "vanishing";
    }
    return "?";
}

struct CharacterValue {
    ValueKind kind = ValueKind::zero;
    CaseTag tag = CaseTag::vanishing;
    double normalized = 0;               // D^{1/2} |Theta| or its bound
    double raw = 0;                      // |Theta| or its bound
    std::optional<Surd> exact;           // closed form of `normalized`, when there is one
    std::optional<std::pair<Surd, Surd>> branches;  // (1 + deg D^{1/2}, 1 - deg D^{1/2})
    QPower sqrt_discriminant;
};

/// Legendre symbol values on F_p, indexed by residue (entry 0 is 0).
using LegendreTable = std::vector<int>;

inline LegendreTable legendre_table(i64 p) {
    LegendreTable t(static_cast<std::size_t>(p));
    for (i64 x = 0; x < p; ++x) t[static_cast<std::size_t>(x)] = legendre(x, p);
    return t;
}

/// A = (1 / (2 sqrt q)) sum_{X != Y} chi(X - Y) phi(1 + p^j X sqrt(theta)) over
/// the residue-field parametrization of (k^1_theta)_{r:r+}, r = j + 1/2, where
/// gamma = 1 + p^j Y sqrt(theta) + ... lies in the shell.
inline std::complex<double> ramified_exp_sum(const QuasiCharacter& phi, const TorusElement& gamma,
                                             const LegendreTable& chi) {
    const TorusQuotient& q = phi.quotient();
    if (!is_ramified(q.theta()) || q.r2() % 2 != 1) throw DomainError("exponential sum needs a ramified character of half-odd depth");
    if (gamma.is_split() || *gamma.torus_class().theta != q.theta()) throw DomainError("element is not in the character's torus");
    if (depth_data(gamma).d2 != q.r2()) throw DomainError("element is not in the depth-r shell");
    if (!phi.has_exact_depth()) throw DomainError("character does not have exact depth");
    const i64 p = q.context().p();
    if (static_cast<i64>(chi.size()) != p) throw DomainError("Legendre table has the wrong size");

    const int j = (q.r2() - 1) / 2;
    const PadicScalar& b = gamma.elliptic_value().value().b();
    const i64 y = intmod::reduce(b.unit(), p);
    if (b.valuation() != j) throw DomainError("element is not in the depth-r shell");

    std::complex<double> sum = 0;
    for (i64 x = 0; x < p; ++x) {
        if (x == y) continue;
        sum += static_cast<double>(chi[static_cast<std::size_t>(intmod::reduce(x - y, p))]) *
               phi.value_of_key(q.shell_keys()[static_cast<std::size_t>(x)]);
    }
    return sum / (2.0 * std::sqrt(static_cast<double>(p)));
}

inline std::complex<double> ramified_exp_sum(const QuasiCharacter& phi, const TorusElement& gamma) {
    return ramified_exp_sum(phi, gamma, legendre_table(phi.quotient().context().p()));
}

inline i64 primitive_root(i64 p) {
    std::vector<i64> primes;
    i64 n = p - 1;
    for (i64 f = 2; f * f <= n; ++f)
        if (n % f == 0) {
            primes.push_back(f);
            while (n % f == 0) n /= f;
        }
    if (n > 1) primes.push_back(n);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (i64 f : primes) ok = ok && intmod::pow(g, (p - 1) / f, p) != 1;
        if (ok) return g;
    }
    throw DomainError("no primitive root modulo " + std::to_string(p));
}

/// Phases of the multiplicative character chi_k(g^e) = exp(2 pi i k e / (p-1));
/// entry 0 is unused.
inline std::vector<Rational> multiplicative_character(i64 p, i64 k) {
    std::vector<Rational> ph(static_cast<std::size_t>(p), Rational(0));
    const i64 g = primitive_root(p);
    i64 x = 1;
    for (i64 e = 0; e < p - 1; ++e) {
        ph[static_cast<std::size_t>(x)] = Rational(intmod::reduce(k * e, p - 1), p - 1);
        x = intmod::mul(x, g, p);
    }
    return ph;
}

/// Phases of psi_t(x) = exp(2 pi i t x / p).
inline std::vector<Rational> additive_character(i64 p, i64 t) {
    std::vector<Rational> ph(static_cast<std::size_t>(p));
    for (i64 x = 0; x < p; ++x) ph[static_cast<std::size_t>(x)] = Rational(intmod::reduce(t * x, p), p);
    return ph;
}

/// sum_{x in F_p^x} chi(x) psi(x) for characters given by phase tables.
inline std::complex<double> gauss_sum(const std::vector<Rational>& chi, const std::vector<Rational>& psi) {
    if (chi.size() != psi.size()) throw DomainError("character tables over different fields");
    std::complex<double> s = 0;
    for (std::size_t x = 1; x < chi.size(); ++x) s += std::polar(1.0, kTwoPi * to_double(chi[x] + psi[x]));
    return s;
}

/// +1 iff x is a norm from k_theta.
inline int sgn_theta(const FieldContext& ctx, ThetaLabel t, const PadicScalar& x) {
    if (x.is_zero()) throw UndefinedForZero("sgn_theta of zero");
    const int v = x.valuation();
    const bool odd = (v % 2) != 0;
    if (!is_ramified(t)) return odd ? -1 : 1;
    // theta = u0 p; -theta is the norm of sqrt(theta)
    const i64 u0 = t == ThetaLabel::pi ? 1 : ctx.epsilon();
    const int s = legendre(x.residue_unit(), ctx.p());
    return odd ? s * legendre(-u0, ctx.p()) : s;
}

namespace detail {

inline CharacterValue finish(CharacterValue v, double normalized) {
    v.normalized = normalized;
    v.raw = normalized / v.sqrt_discriminant.to_double();
    return v;
}

inline CharacterValue exact_value(CharacterValue v, CaseTag tag, const Surd& s) {
    v.kind = ValueKind::exact;
    v.tag = tag;
    v.exact = s;
    return finish(std::move(v), s.to_double());
}

inline CharacterValue bound_value(CharacterValue v, CaseTag tag, const Surd& s) {
    v.kind = ValueKind::upper_bound;
    v.tag = tag;
    v.exact = s;
    return finish(std::move(v), s.to_double());
}

}  // namespace detail

/// D(gamma)^{1/2} |Theta_pi(gamma)|, exact where a closed form is known and
/// a certified upper bound otherwise. `dd` must be depth_data(gamma).
inline CharacterValue character_abs(const SupercuspidalParameter& param, const TorusElement& gamma, const DepthData& dd,
                                    const LegendreTable& chi) {
    const i64 q = param.q();
    if (gamma.prime() != q) throw DomainError("parameter and element over different fields");
    const int r2 = param.r2();
    const int dp = dd.d_plus2;
    const TorusClass& gc = gamma.torus_class();
    const QPower deg = formal_degree(param);
    const QPower sqrt_d{q, Rational(1), -dp};
    const Surd one(q, 1);
    const Surd deg_sqrt_d = (deg * sqrt_d).to_surd();

    CharacterValue v;
    v.sqrt_discriminant = sqrt_d;
    v.exact = Surd(q, 0);

    switch (param.kind) {
        case ParameterKind::unramified: {
            if (gc == param.cls && dp <= r2) {
                const auto& lambda = gamma.elliptic_value();
                const double t = kTwoPi * to_double(param.phi.phase(lambda));
                v.kind = ValueKind::exact;
                v.tag = CaseTag::own_torus;
                v.exact.reset();
                return detail::finish(std::move(v), std::abs(2.0 * std::cos(t)));
            }
            if (dp <= r2) break;
            if (gc.is_unramified()) {
                v.branches = std::make_pair(one + deg_sqrt_d, one - deg_sqrt_d);
                return detail::exact_value(std::move(v), CaseTag::unramified_near, one + deg_sqrt_d);
            }
            if (gc.is_split()) return detail::exact_value(std::move(v), CaseTag::split_near, one - deg_sqrt_d);
            return detail::exact_value(std::move(v), CaseTag::generic_near, deg_sqrt_d);
        }
        case ParameterKind::ramified: {
            const bool same_theta = gc.is_elliptic() && gc.theta == param.cls.theta;
            if (gc == param.cls && dp < r2) return detail::bound_value(std::move(v), CaseTag::ramified_interior, Surd(q, 2));
            if (same_theta && dp == r2) {
                const TorusElement shell = dd.d2 == r2 ? gamma : gamma.negated();
                const double a = std::abs(ramified_exp_sum(param.phi, shell, chi));
                v.kind = ValueKind::upper_bound;
                v.tag = CaseTag::ramified_own_shell;
                v.exact.reset();
                return detail::finish(std::move(v), 1.0 + a);
            }
            if (gc.is_ramified() && dp == r2) return detail::bound_value(std::move(v), CaseTag::ramified_other_shell, one);
            if (dp <= r2) break;
            if (same_theta || gc.is_split()) return detail::bound_value(std::move(v), CaseTag::ramified_near, one + deg_sqrt_d);
            return detail::bound_value(std::move(v), CaseTag::ramified_generic, deg_sqrt_d);
        }
        case ParameterKind::exceptional: {
            const bool own_depth_zero = gc == param.cls && dp == 0;
            const bool near = dp > 0;
            if (own_depth_zero || near) {
                const Surd half(q, Rational(1, 2));
                return detail::bound_value(std::move(v), CaseTag::exceptional_support, half * (one + sqrt_d.to_surd()));
            }
            break;
        }
    }
    v.kind = ValueKind::zero;
    v.tag = CaseTag::vanishing;
    return detail::finish(std::move(v), 0.0);
}

inline CharacterValue character_abs(const SupercuspidalParameter& param, const TorusElement& gamma) {
    return character_abs(param, gamma, depth_data(gamma), legendre_table(param.q()));
}

struct RatioValue {
    double value = 0;
    ValueKind kind = ValueKind::zero;
};

/// |Theta_pi(gamma)| / deg(pi).
inline RatioValue conjecture_ratio(const SupercuspidalParameter& param, const CharacterValue& cv) {
    return {cv.raw / formal_degree(param).to_double(), cv.kind};
}

inline RatioValue conjecture_ratio(const SupercuspidalParameter& param, const TorusElement& gamma) {
    return conjecture_ratio(param, character_abs(param, gamma));
}

/// Formal-degree sandwich 1/vol(G_[x]) <= deg <= q^{dim g} / vol(G_{x,r+}) for
/// J between G_{x,r+} and G_[x]; x is the vertex (unramified, exceptional)
/// or the edge midpoint (ramified) of the SL(2) tree.
struct DegreeSandwich {
    QPower lower;
    QPower degree;
    QPower upper;
    bool holds() const { return lower.to_surd() <= degree.to_surd() && degree.to_surd() <= upper.to_surd(); }
};

inline DegreeSandwich degree_sandwich(ParameterKind kind, i64 q, int r2) {
    static const RootSystem a1 = build_root_system('A', 1);
    const bool vertex = kind != ParameterKind::ramified;
    const ApartmentPoint x = vertex ? vertex_point(a1) : barycenter_point(a1);
    const std::int64_t e = log_index(a1, x, Endpoint::after(0), Endpoint::after(Rational(r2, 2)));
    DegreeSandwich s;
    s.degree = formal_degree(kind, q, r2);
    if (vertex) {
        // vol(G_x) = (q^2-1) q^{-1/2}, [G_x : G_{x,0+}] = q (q^2-1)
        s.lower = {q, Rational(1, q * q - 1), 1};
        s.upper = {q, Rational(1), 2 * 3 + 3 + static_cast<int>(2 * e)};
    } else {
        // Iwahori: vol = (q-1) q^{-1/2}, [I : I_{0+}] = q - 1
        s.lower = {q, Rational(1, q - 1), 1};
        s.upper = {q, Rational(1), 2 * 3 + 1 + static_cast<int>(2 * e)};
    }
    return s;
}

inline DegreeSandwich degree_sandwich(const SupercuspidalParameter& param) {
    return degree_sandwich(param.kind, param.q(), param.r2());
}

}  // namespace scchar
