#pragma once

// Moy-Prasad indices at points of the standard apartment of a split group,
// by counting affine roots alpha + n with values in a half-open range.

#include <cstdint>
#include <string>
#include <vector>

#include "scchar/errors.hpp"
#include "scchar/exact.hpp"
#include "scchar/rootdata.hpp"

namespace scchar {

/// A point x of the apartment, stored as the values alpha_i(x) on the
/// simple roots.
struct ApartmentPoint {
    std::vector<Rational> coords;

    Rational eval(const Root& r) const {
        Rational s = 0;
        for (std::size_t i = 0; i < r.size(); ++i) s += Rational(r[i]) * coords[i];
        return s;
    }
    bool operator==(const ApartmentPoint&) const = default;
};

/// The hyperspecial vertex alpha_i(x) = 0.
inline ApartmentPoint vertex_point(const RootSystem& rs) {
    return {std::vector<Rational>(static_cast<std::size_t>(rs.rank), Rational(0))};
}

/// The alcove vertex omega_i^vee / m_i, with m_i the coefficient of
/// alpha_i in the highest root.
inline ApartmentPoint alcove_vertex(const RootSystem& rs, int i) {
    ApartmentPoint x = vertex_point(rs);
    x.coords[static_cast<std::size_t>(i)] = Rational(1, rs.highest_root()[static_cast<std::size_t>(i)]);
    return x;
}

/// Barycenter of the fundamental alcove: alpha_i(x) = 1 / ((n+1) m_i).
inline ApartmentPoint barycenter_point(const RootSystem& rs) {
    ApartmentPoint x = vertex_point(rs);
    for (std::size_t i = 0; i < x.coords.size(); ++i) x.coords[i] = Rational(1, (rs.rank + 1) * rs.highest_root()[i]);
    return x;
}

/// Simple reflection s_i acting on x: alpha_j(s_i x) = x_j - <alpha_j, alpha_i^vee> x_i.
inline ApartmentPoint reflect(const RootSystem& rs, const ApartmentPoint& x, int i) {
    ApartmentPoint y = x;
    const std::size_t si = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < y.coords.size(); ++j) y.coords[j] = x.coords[j] - Rational(rs.cartan[si][j]) * x.coords[si];
    return y;
}

/// A filtration index r, or r+ when `plus` is set.
struct Endpoint {
    Rational value = 0;
    bool plus = false;

    static Endpoint at(Rational v) { return {std::move(v), false}; }
    static Endpoint after(Rational v) { return {std::move(v), true}; }

    friend bool operator<=(const Endpoint& a, const Endpoint& b) {
        return a.value < b.value || (a.value == b.value && (!a.plus || b.plus));
    }
    std::string str() const { return format_rational(value) + (plus ? "+" : ""); }
};

namespace detail {

inline BigInt floor_rational(const Rational& x) {
    const BigInt n = boost::multiprecision::numerator(x);
    const BigInt d = boost::multiprecision::denominator(x);
    BigInt q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q;
}

inline BigInt ceil_rational(const Rational& x) { return -floor_rational(-x); }

}  // namespace detail

/// #{n in Z : a <= c + n < b} with endpoint semantics (t >= r, t > r for r+;
/// t < r, t <= r for r+).
inline std::int64_t count_shifts(const Rational& c, const Endpoint& a, const Endpoint& b) {
    const BigInt lo = a.plus ? detail::floor_rational(a.value - c) + 1 : detail::ceil_rational(a.value - c);
    const BigInt hi = b.plus ? detail::floor_rational(b.value - c) : detail::ceil_rational(b.value - c) - 1;
    return hi < lo ? 0 : static_cast<std::int64_t>(hi - lo + 1);
}

inline void check_range(const Endpoint& a, const Endpoint& b) {
    if (!(a <= b)) throw DomainError("filtration range [" + a.str() + ", " + b.str() + ") is reversed");
}

/// #{(alpha, n) : alpha in roots, a <= alpha(x) + n < b}.
inline std::int64_t affine_count(const ApartmentPoint& x, const Endpoint& a, const Endpoint& b, const std::vector<Root>& roots) {
    check_range(a, b);
    std::int64_t total = 0;
    for (const Root& r : roots) total += count_shifts(x.eval(r), a, b);
    return total;
}

/// log_q [g_{x,a} : g_{x,b}]: all affine roots plus rank copies of the
/// torus steps when `include_torus`.
inline std::int64_t log_index(const RootSystem& rs, const ApartmentPoint& x, const Endpoint& a, const Endpoint& b,
                              bool include_torus = true) {
    std::int64_t e = affine_count(x, a, b, rs.roots());
    if (include_torus) e += rs.rank * count_shifts(Rational(0), a, b);
    return e;
}

inline std::vector<Root> roots_outside(const RootSystem& rs, const LeviDescriptor& levi) {
    std::vector<Root> out;
    for (const Root& r : rs.roots())
        if (!supported_in(r, levi.simple_subset)) out.push_back(r);
    return out;
}

inline std::vector<Root> positive_outside(const RootSystem& rs, const LeviDescriptor& levi) {
    std::vector<Root> out;
    for (const Root& r : rs.positive)
        if (!supported_in(r, levi.simple_subset)) out.push_back(r);
    return out;
}

/// -log_q vol(L_s): affine roots outside the Levi with values in (0, s).
inline std::int64_t vol_Ls_exponent(const RootSystem& rs, const LeviDescriptor& levi, const ApartmentPoint& x,
                                    const Rational& s) {
    if (s <= 0) throw DomainError("vol_Ls_exponent needs s > 0");
    return affine_count(x, Endpoint::after(0), Endpoint::at(s), roots_outside(rs, levi));
}

struct InequalityCheck {
    std::int64_t lhs = 0;  // twice the exponent of the unipotent index
    std::int64_t rhs = 0;  // exponent of q^{dim N} (or q^{2 dim N}) times the full index
    bool holds() const { return lhs <= rhs; }
};

struct IndexInequalityReport {
    InequalityCheck part_i;
    InequalityCheck part_ii;
    InequalityCheck part_iii;
    bool all_hold() const { return part_i.holds() && part_ii.holds() && part_iii.holds(); }
};

/// Exponent form of the three index inequalities for the parabolic with
/// Levi `levi` and unipotent radical N' (positive roots outside the Levi).
/// Indices of the reductive quotient are bounded below by their unipotent
/// root count, so parts (ii) and (iii) are checked in a stronger form.
inline IndexInequalityReport check_index_inequalities(const RootSystem& rs, const LeviDescriptor& levi,
                                                      const ApartmentPoint& x, const Rational& a_prime,
                                                      const Rational& a) {
    if (a_prime <= 0 || a < a_prime) throw DomainError("index inequalities need 0 < a' <= a");
    const std::int64_t dim_n = rs.num_positive();
    const auto n_prime = positive_outside(rs, levi);
    const auto outside = roots_outside(rs, levi);

    IndexInequalityReport rep;
    const Endpoint lo = Endpoint::at(a_prime), hi = Endpoint::at(a);
    rep.part_i.lhs = 2 * affine_count(x, lo, hi, n_prime);
    rep.part_i.rhs = dim_n + affine_count(x, lo, hi, outside);

    const Endpoint zero = Endpoint::at(0), zero_plus = Endpoint::after(0);
    rep.part_ii.lhs = 2 * affine_count(x, zero, zero_plus, n_prime);
    rep.part_ii.rhs = dim_n + affine_count(x, zero, zero_plus, outside);

    rep.part_iii.lhs = 2 * affine_count(x, zero, hi, n_prime);
    rep.part_iii.rhs = 2 * dim_n + affine_count(x, zero, hi, outside);
    return rep;
}

}  // namespace scchar
