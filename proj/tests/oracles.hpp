#pragma once

// Brute-force reference computations shared by the test suites. Nothing
// here calls into the routine it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "scchar/characters.hpp"
#include "scchar/exact.hpp"

namespace oracle {

using i64 = std::int64_t;
inline constexpr double kTau = 6.283185307179586476925286766559;

inline i64 md(i64 a, i64 m) {
    a %= m;
    return a < 0 ? a + m : a;
}

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline int val(i64 n, i64 p) {
    int v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Legendre symbol from the table of squares.
inline int legendre(i64 u, i64 p) {
    u = md(u, p);
    if (u == 0) return 0;
    for (i64 x = 1; x < p; ++x)
        if (x * x % p == u) return 1;
    return -1;
}

inline i64 least_nonresidue(i64 p) {
    for (i64 e = 2; e < p; ++e)
        if (legendre(e, p) == -1) return e;
    return 0;
}

/// Integer representative of theta: eps, p, or eps * p.
inline i64 theta_value(i64 p, int which) {
    const i64 e = least_nonresidue(p);
    return which == 0 ? e : which == 1 ? p : e * p;
}

/// Size of the image of {a^2 - theta b^2 = 1} in (Z/p^ka) x (Z/p^kb), by
/// solving modulo p^K with K = max(ka, kb) and projecting.
inline i64 quotient_order(i64 p, i64 theta, int ka, int kb) {
    const int K = std::max(ka, kb);
    const i64 m = ipow(p, K), ma = ipow(p, ka), mb = ipow(p, kb);
    std::set<std::pair<i64, i64>> img;
    for (i64 a = 0; a < m; ++a)
        for (i64 b = 0; b < m; ++b)
            if (md(a * a - md(theta, m) * b % m * b, m) == 1 % m) img.emplace(a % ma, b % mb);
    return static_cast<i64>(img.size());
}

/// Counts residue pairs (a, b) mod p with a^2 - theta b^2 = 1.
inline i64 residue_norm_one_count(i64 p, i64 theta) {
    i64 n = 0;
    for (i64 a = 0; a < p; ++a)
        for (i64 b = 0; b < p; ++b)
            if (md(a * a - theta * b * b, p) == 1) ++n;
    return n;
}

/// Classes (v mod 2, legendre(unit)) reached by norms a^2 - theta b^2 with
/// a, b ranging over Z/p^3 and valuation below 2.
inline std::set<std::pair<int, int>> norm_classes(i64 p, i64 theta) {
    const i64 m = p * p * p;
    std::set<std::pair<int, int>> out;
    for (i64 a = 0; a < m; a += 1)
        for (i64 b = 0; b < p * p; ++b) {
            const i64 n = md(a * a - md(theta, m) * b % m * b, m);
            if (n == 0) continue;
            const int v = val(n, p);
            if (v >= 2) continue;
            i64 u = n;
            for (int k = 0; k < v; ++k) u /= p;
            out.emplace(v % 2, legendre(u, p));
        }
    return out;
}

/// Gauss sum with the Legendre character and psi(x) = exp(2 pi i t x / p).
inline std::complex<double> quadratic_gauss(i64 p, i64 t) {
    std::complex<double> s = 0;
    for (i64 x = 1; x < p; ++x) s += static_cast<double>(legendre(x, p)) * std::polar(1.0, kTau * md(t * x, p) / p);
    return s;
}

/// Cartan matrix A_ij = <alpha_i^vee, alpha_j> (Bourbaki numbering), built
/// from the Dynkin diagram with bond direction; independent of gram data.
inline std::vector<std::vector<int>> cartan(char type, int n) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto simple = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    // long node l, short node s, bond multiplicity k
    auto multi = [&](int l, int s, int k) {
        a[l][s] = -1;
        a[s][l] = -k;
    };
    switch (type) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) simple(i, i + 1);
            break;
        case 'B':
            for (int i = 0; i + 2 < n; ++i) simple(i, i + 1);
            multi(n - 2, n - 1, 2);
            break;
        case 'C':
            for (int i = 0; i + 2 < n; ++i) simple(i, i + 1);
            multi(n - 1, n - 2, 2);
            break;
        case 'D':
            for (int i = 0; i + 2 < n; ++i) simple(i, i + 1);
            simple(n - 3, n - 1);
            break;
        case 'E':
            simple(0, 2);
            simple(1, 3);
            for (int i = 2; i + 1 < n; ++i) simple(i, i + 1);
            break;
        case 'F':
            simple(0, 1);
            multi(1, 2, 2);
            simple(2, 3);
            break;
        case 'G':
            multi(1, 0, 3);  // alpha_1 short, alpha_2 long
            break;
    }
    return a;
}

using RootVec = std::vector<int>;

/// All roots as the Weyl orbit of the simple roots under
/// s_i(beta) = beta - <alpha_i^vee, beta> alpha_i.
inline std::set<RootVec> weyl_orbit_roots(char type, int n) {
    const auto a = cartan(type, n);
    std::set<RootVec> seen;
    std::vector<RootVec> todo;
    for (int i = 0; i < n; ++i) {
        RootVec e(n, 0);
        e[i] = 1;
        if (seen.insert(e).second) todo.push_back(e);
    }
    while (!todo.empty()) {
        RootVec b = todo.back();
        todo.pop_back();
        for (int i = 0; i < n; ++i) {
            int pair = 0;
            for (int j = 0; j < n; ++j) pair += a[i][j] * b[j];
            RootVec c = b;
            c[i] -= pair;
            if (seen.insert(c).second) todo.push_back(c);
        }
    }
    return seen;
}

inline std::vector<RootVec> positive_part(const std::set<RootVec>& roots) {
    std::vector<RootVec> out;
    for (const auto& r : roots)
        if (std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; })) out.push_back(r);
    return out;
}

inline int max_height(const std::vector<RootVec>& pos) {
    int h = 0;
    for (const auto& r : pos) {
        int s = 0;
        for (int c : r) s += c;
        h = std::max(h, s);
    }
    return h;
}

/// kappa by direct enumeration of proper simple-root subsets, with the
/// A_{n-1}-in-A_n chain excluded and nonpositive numerators dropped.
inline scchar::Rational kappa(char type, int n) {
    const auto pos = positive_part(weyl_orbit_roots(type, n));
    const int dim = n + 2 * static_cast<int>(pos.size());
    const int h = max_height(pos);
    scchar::Rational best = -1;
    for (int mask = 0; mask < (1 << n) - 1; ++mask) {
        int inside = 0;
        for (const auto& r : pos) {
            bool ok = true;
            for (int i = 0; i < n; ++i)
                if (r[i] != 0 && !(mask & (1 << i))) ok = false;
            inside += ok;
        }
        const int bits = __builtin_popcount(static_cast<unsigned>(mask));
        if (type == 'A' && n >= 2 && bits == n - 1) {
            int lo = n, hi = -1;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) lo = std::min(lo, i), hi = std::max(hi, i);
            if (hi - lo == n - 2) continue;
        }
        const int num = dim - (n + 2 * inside) - (h > 1 ? 2 * n : 0);
        if (num <= 0) continue;
        const scchar::Rational k(num, 2 * dim);
        if (best < 0 || k < best) best = k;
    }
    return best;
}

/// #{(alpha, n) : a <= alpha(x) + n < b} by scanning n over a window; the
/// `plus` flags turn a into a strict lower bound and b into an inclusive
/// upper bound.
inline i64 affine_count(const std::vector<RootVec>& roots, const std::vector<scchar::Rational>& x, const scchar::Rational& a,
                        bool a_plus, const scchar::Rational& b, bool b_plus) {
    i64 total = 0;
    for (const auto& r : roots) {
        scchar::Rational v = 0;
        for (std::size_t i = 0; i < r.size(); ++i) v += scchar::Rational(r[i]) * x[i];
        for (int n = -60; n <= 60; ++n) {
            const scchar::Rational t = v + n;
            const bool lo = a_plus ? t > a : t >= a;
            const bool hi = b_plus ? t <= b : t < b;
            if (lo && hi) ++total;
        }
    }
    return total;
}

// A over the shell, re-summed from scratch: the Legendre symbol from the
// square table and psi(X) = phi(g)^X for the X = 1 shell generator g.
inline std::complex<double> brute_exp_sum(const scchar::QuasiCharacter& phi, i64 y) {
    const scchar::TorusQuotient& q = phi.quotient();
    const i64 p = q.context().p();
    const i64 g = q.shell_keys()[1];
    std::complex<double> sum = 0;
    i64 key = q.identity_key();
    for (i64 x = 0; x < p; ++x) {
        if (x != y) {
            const double t = kTau * scchar::to_double(phi.phase_of_key(key));
            sum += static_cast<double>(legendre(x - y, p)) * std::complex<double>(std::cos(t), std::sin(t));
        }
        key = q.mul_keys(key, g);
    }
    return sum / (2.0 * std::sqrt(static_cast<double>(p)));
}

}  // namespace oracle
