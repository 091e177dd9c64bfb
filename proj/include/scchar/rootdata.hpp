#pragma once

// Reduced irreducible root systems from Dynkin data, and the constants of
// the uniform character bound: h_G, r_G, kappa, A, A_{gamma,Sigma}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scchar/abelian.hpp"
#include "scchar/errors.hpp"
#include "scchar/exact.hpp"

namespace scchar {

using Root = std::vector<int>;  // coefficients in the simple-root basis

inline int height(const Root& r) {
    int h = 0;
    for (int c : r) h += c;
    return h;
}

struct RootSystem {
    char type = 'A';
    int rank = 0;
    IntMatrix gram;    // (alpha_i, alpha_j), integer scaled
    IntMatrix cartan;  // cartan[i][j] = <alpha_j, alpha_i^vee> = 2 g_ij / g_ii
    std::vector<Root> positive;  // sorted by height, simple roots first
    std::int64_t weyl_order = 1;

    std::string name() const { return std::string(1, type) + std::to_string(rank); }
    int num_positive() const { return static_cast<int>(positive.size()); }
    int dim() const { return rank + 2 * num_positive(); }

    /// Positive roots followed by their negatives.
    std::vector<Root> roots() const {
        std::vector<Root> out = positive;
        for (const Root& r : positive) {
            Root n = r;
            for (int& c : n) c = -c;
            out.push_back(n);
        }
        return out;
    }

    const Root& highest_root() const { return positive.back(); }
};

namespace detail {

inline IntMatrix gram_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    IntMatrix g(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) g[i][i] = 2;
    for (auto [a, b] : edges) {
        if (a > n || b > n) continue;
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1;
    }
    return g;
}

inline IntMatrix gram_matrix(char type, int n) {
    std::vector<std::pair<int, int>> chain;
    for (int i = 1; i < n; ++i) chain.emplace_back(i, i + 1);
    switch (type) {
        case 'A':
            if (n < 1) break;
            return gram_from_edges(n, chain);
        case 'D': {
            if (n < 4) break;
            std::vector<std::pair<int, int>> e;
            for (int i = 1; i < n - 1; ++i) e.emplace_back(i, i + 1);
            e.emplace_back(n - 2, n);
            return gram_from_edges(n, e);
        }
        case 'E':
            if (n < 6 || n > 8) break;
            return gram_from_edges(n, {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}});
        case 'B':
        case 'C': {
            if (n < 2) break;
            // B: alpha_n short; C: alpha_n long
            IntMatrix g(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
            const std::int64_t body = type == 'B' ? 4 : 2;
            for (int i = 0; i < n - 1; ++i) g[i][i] = body;
            g[n - 1][n - 1] = type == 'B' ? 2 : 4;
            for (int i = 0; i + 2 < n; ++i) g[i][i + 1] = g[i + 1][i] = -body / 2;
            g[n - 2][n - 1] = g[n - 1][n - 2] = -2;
            return g;
        }
        case 'F':
            if (n != 4) break;
            return {{4, -2, 0, 0}, {-2, 4, -2, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
        case 'G':
            if (n != 2) break;
            return {{2, -3}, {-3, 6}};
        default:
            break;
    }
    throw DomainError(std::string("no root system of type ") + type + std::to_string(n));
}

}  // namespace detail

/// Positive roots by closure under simple-root strings: beta + alpha_i is a
/// root iff q > 0 where p - q = <beta, alpha_i^vee>.
inline RootSystem build_root_system(char type, int rank) {
    RootSystem rs;
    rs.type = type;
    rs.rank = rank;
    rs.gram = detail::gram_matrix(type, rank);
    const std::size_t n = static_cast<std::size_t>(rank);
    rs.cartan.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rs.cartan[i][j] = 2 * rs.gram[i][j] / rs.gram[i][i];

    std::set<Root> known;
    std::vector<Root> layer;
    for (std::size_t i = 0; i < n; ++i) {
        Root r(n, 0);
        r[i] = 1;
        layer.push_back(r);
        known.insert(r);
    }
    while (!layer.empty()) {
        rs.positive.insert(rs.positive.end(), layer.begin(), layer.end());
        std::vector<Root> next;
        for (const Root& beta : layer) {
            for (std::size_t i = 0; i < n; ++i) {
                int p = 0;
                for (Root down = beta;;) {
                    down[i] -= 1;
                    if (!known.count(down)) break;
                    ++p;
                }
                std::int64_t pairing = 0;
                for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * rs.cartan[i][j];
                if (p - pairing > 0) {
                    Root up = beta;
                    up[i] += 1;
                    if (known.insert(up).second) next.push_back(up);
                }
            }
        }
        std::sort(next.begin(), next.end());
        layer = std::move(next);
    }

    // Exponents from the height partition: k occurs n_k - n_{k+1} times.
    std::map<int, int> by_height;
    for (const Root& r : rs.positive) ++by_height[height(r)];
    for (const auto& [k, nk] : by_height) {
        const int next = by_height.count(k + 1) ? by_height.at(k + 1) : 0;
        for (int t = 0; t < nk - next; ++t) rs.weyl_order *= (k + 1);
    }
    return rs;
}

/// Parses labels such as "A1", "C2", "G2".
inline RootSystem parse_root_system(const std::string& label) {
    if (label.size() < 2) throw DomainError("bad root system label '" + label + "'");
    int rank = 0;
    try {
        rank = std::stoi(label.substr(1));
    } catch (const std::exception&) {
        throw DomainError("bad root system label '" + label + "'");
    }
    return build_root_system(label[0], rank);
}

inline int height_of_phi(const RootSystem& rs) {
    int h = 0;
    for (const Root& r : rs.positive) h = std::max(h, height(r));
    return h;
}

/// True iff every simple root in the support of r lies in `subset`.
inline bool supported_in(const Root& r, const std::vector<int>& subset) {
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0 && std::find(subset.begin(), subset.end(), static_cast<int>(i)) == subset.end()) return false;
    return true;
}

struct LeviDescriptor {
    std::vector<int> simple_subset;  // 0-based indices into the simple roots
    int dim = 0;
    bool excluded = false;  // A_{n-1} inside A_n
    std::string label() const {
        std::string s = "{";
        for (std::size_t i = 0; i < simple_subset.size(); ++i) s += (i ? " " : "") + std::to_string(simple_subset[i] + 1);
        return s + "}";
    }
};

inline LeviDescriptor make_levi(const RootSystem& rs, std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    for (int i : subset)
        if (i < 0 || i >= rs.rank) throw DomainError("Levi subset index out of range");
    LeviDescriptor l;
    l.simple_subset = std::move(subset);
    int inside = 0;
    for (const Root& r : rs.positive)
        if (supported_in(r, l.simple_subset)) ++inside;
    l.dim = rs.rank + 2 * inside;
    // A Levi of type A_{n-1} in A_n: a connected chain of n-1 simple roots.
    if (rs.type == 'A' && rs.rank >= 2 && static_cast<int>(l.simple_subset.size()) == rs.rank - 1) {
        const auto& s = l.simple_subset;
        l.excluded = s.back() - s.front() == rs.rank - 2;
    }
    return l;
}

/// All proper standard Levi subgroups (proper subsets of the simple roots).
inline std::vector<LeviDescriptor> standard_levis(const RootSystem& rs) {
    std::vector<LeviDescriptor> out;
    const int full = (1 << rs.rank) - 1;
    for (int mask = 0; mask < full; ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < rs.rank; ++i)
            if (mask & (1 << i)) subset.push_back(i);
        out.push_back(make_levi(rs, subset));
    }
    return out;
}

struct KappaTerm {
    LeviDescriptor levi;
    int numerator = 0;  // dim G - dim G' (- 2 r_G when h_G > 1)
    bool excluded = false;
    bool nonpositive = false;
};

struct BoundConstants {
    int h_G = 0;
    int r_G = 0;
    int dim = 0;
    int center_dim = 0;
    Rational kappa = 0;
    int A = 0;
    std::vector<KappaTerm> terms;

    /// Space-separated notes on excluded and nonpositive Levi terms.
    std::string flags() const {
        std::string s;
        for (const auto& t : terms) {
            if (t.excluded) s += (s.empty() ? "" : " ") + std::string("excluded:") + t.levi.label();
            else if (t.nonpositive) s += (s.empty() ? "" : " ") + std::string("nonpositive:") + t.levi.label();
        }
        return s;
    }
};

inline int exponent_A(const RootSystem& rs) {
    const int h = height_of_phi(rs);
    return h > 1 ? rs.rank * h + 1 : rs.rank + 1;
}

inline BoundConstants kappa(const RootSystem& rs, int center_dim = 0) {
    BoundConstants bc;
    bc.h_G = height_of_phi(rs);
    bc.r_G = rs.rank;
    bc.dim = rs.dim();
    bc.center_dim = center_dim;
    bc.A = exponent_A(rs);
    const int denom = 2 * (bc.dim - center_dim);
    bool any = false;
    for (const auto& levi : standard_levis(rs)) {
        KappaTerm t;
        t.levi = levi;
        t.numerator = bc.dim - levi.dim - (bc.h_G > 1 ? 2 * bc.r_G : 0);
        t.excluded = levi.excluded;
        t.nonpositive = !t.excluded && t.numerator <= 0;
        if (!t.excluded && !t.nonpositive) {
            const Rational k(t.numerator, denom);
            if (!any || k < bc.kappa) bc.kappa = k;
            any = true;
        }
        bc.terms.push_back(t);
    }
    if (!any) throw DomainError("no admissible Levi term for " + rs.name());
    return bc;
}

/// h_G * sd + s when h_G > 1, else sd.
inline Rational a_gamma_sigma(int h_G, const Rational& sd, const Rational& s) {
    if (sd < 0 || s < 0) throw DomainError("a_gamma_sigma needs sd, s >= 0");
    return h_G > 1 ? Rational(h_G) * sd + s : sd;
}

/// Inputs of the displayed main estimate
///   C1 (#W)^2 q^{q_exponent} D^{-1} (r+4)^{r_G} vol(L_s)^{1/2},
/// with logarithms taken base q.
struct MainBoundShape {
    std::int64_t q = 0;
    std::int64_t weyl_order = 1;
    double q_exponent = 0;
    double log_q_D = 0;
    double r = 0;
    int r_G = 0;
    double log_q_vol = 0;
    double C1 = 1;
};

inline double main_bound_rhs(const MainBoundShape& s) {
    const double lq = std::log(static_cast<double>(s.q));
    return std::log(s.C1) / lq + 2.0 * std::log(static_cast<double>(s.weyl_order)) / lq + s.q_exponent - s.log_q_D +
           s.r_G * std::log(s.r + 4.0) / lq + 0.5 * s.log_q_vol;
}

/// The estimate for a root system at depth r with s = r/2; returns log_q.
inline double main_bound_rhs(const RootSystem& rs, std::int64_t q, const Rational& r, const Rational& sd,
                             double log_q_D, double log_q_vol, double C1 = 1) {
    const Rational a = a_gamma_sigma(height_of_phi(rs), sd, r / 2);
    MainBoundShape s;
    s.q = q;
    s.weyl_order = rs.weyl_order;
    s.q_exponent = rs.dim() + rs.rank * (to_double(a) + 1.0);
    s.log_q_D = log_q_D;
    s.r = to_double(r);
    s.r_G = rs.rank;
    s.log_q_vol = log_q_vol;
    s.C1 = C1;
    return main_bound_rhs(s);
}

}  // namespace scchar
