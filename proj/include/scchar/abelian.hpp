#pragma once

// Invariant-factor decomposition of a finite abelian group given by its
// elements and a multiplication on integer keys.

#include <cstdint>
#include <cstdlib>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scchar/errors.hpp"

namespace scchar {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Smith normal form of a square relation matrix. Returns the diagonal and
/// fills `v` with the unimodular column transform, so that the map
/// c -> c * v (mod diag) identifies Z^k / rowspace(m) with the product of
/// cyclic groups Z/diag[i].
inline std::vector<std::int64_t> smith_diagonal(IntMatrix m, IntMatrix& v) {
    const std::size_t k = m.size();
    v.assign(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) v[i][i] = 1;

    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (auto& row : m) std::swap(row[a], row[b]);
        for (auto& row : v) std::swap(row[a], row[b]);
    };
    // column b -= f * column a
    auto sub_col = [&](std::size_t b, std::size_t a, std::int64_t f) {
        for (auto& row : m) row[b] -= f * row[a];
        for (auto& row : v) row[b] -= f * row[a];
    };
    auto sub_row = [&](std::size_t b, std::size_t a, std::int64_t f) {
        for (std::size_t j = 0; j < k; ++j) m[b][j] -= f * m[a][j];
    };

    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pi = k, pj = k;
            for (std::size_t i = t; i < k; ++i)
                for (std::size_t j = t; j < k; ++j)
                    if (m[i][j] != 0 && (pi == k || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == k) break;
            std::swap(m[t], m[pi]);
            if (pj != t) swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < k; ++i) {
                sub_row(i, t, m[i][t] / m[t][t]);
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < k; ++j) {
                sub_col(j, t, m[t][j] / m[t][t]);
                if (m[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility: pull a non-divisible row into row t
            bool divides = true;
            for (std::size_t i = t + 1; i < k && divides; ++i)
                for (std::size_t j = t + 1; j < k; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (std::size_t c = 0; c < k; ++c) m[t][c] += m[i][c];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
    }
    std::vector<std::int64_t> diag(k);
    for (std::size_t i = 0; i < k; ++i) diag[i] = std::llabs(m[i][i]);
    return diag;
}

struct AbelianDecomposition {
    std::vector<std::int64_t> orders;          // invariant factors, each > 1
    std::vector<std::int64_t> generator_keys;  // generator_keys[i] has coordinates e_i
    std::unordered_map<std::int64_t, std::vector<std::int64_t>> coords;

    std::int64_t order() const { return static_cast<std::int64_t>(coords.size()); }
};

/// Decomposes the group whose elements are `elements` (keys), with identity
/// `identity` and multiplication `mul(key, key) -> key`.
template <class Mul>
AbelianDecomposition decompose_abelian(const std::vector<std::int64_t>& elements, std::int64_t identity, Mul mul) {
    // Generic closure in raw generators, recording one relation per generator.
    std::unordered_map<std::int64_t, std::vector<std::int64_t>> raw;
    raw.emplace(identity, std::vector<std::int64_t>{});
    std::vector<std::int64_t> raw_gens;
    IntMatrix relations;

    for (std::int64_t g : elements) {
        if (raw.count(g)) continue;
        const std::size_t k = raw_gens.size();
        for (auto& entry : raw) entry.second.resize(k + 1, 0);
        for (auto& row : relations) row.resize(k + 1, 0);

        std::vector<std::int64_t> powers = {identity, g};
        while (!raw.count(powers.back())) powers.push_back(mul(powers.back(), g));
        const std::int64_t n = static_cast<std::int64_t>(powers.size()) - 1;
        std::vector<std::int64_t> rel = raw.at(powers.back());
        for (auto& c : rel) c = -c;
        rel[k] = n;
        relations.push_back(rel);

        std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> old(raw.begin(), raw.end());
        for (std::int64_t i = 1; i < n; ++i)
            for (const auto& [h, c] : old) {
                auto cc = c;
                cc[k] = i;
                raw.emplace(mul(powers[static_cast<std::size_t>(i)], h), std::move(cc));
            }
        raw_gens.push_back(g);
    }
    if (raw.size() != elements.size()) throw DomainError("element list is not closed under multiplication");

    IntMatrix v;
    const auto diag = smith_diagonal(relations, v);
    const std::size_t k = diag.size();

    AbelianDecomposition out;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < k; ++i)
        if (diag[i] > 1) {
            kept.push_back(i);
            out.orders.push_back(diag[i]);
        }
    out.generator_keys.assign(kept.size(), identity);
    for (const auto& [key, c] : raw) {
        std::vector<std::int64_t> nc(kept.size(), 0);
        for (std::size_t a = 0; a < kept.size(); ++a) {
            const std::size_t col = kept[a];
            std::int64_t s = 0;
            for (std::size_t j = 0; j < k; ++j) s += c[j] * v[j][col];
            const std::int64_t d = diag[col];
            nc[a] = ((s % d) + d) % d;
        }
        std::size_t ones = 0, where = 0, nonzero = 0;
        for (std::size_t a = 0; a < nc.size(); ++a)
            if (nc[a] != 0) {
                ++nonzero;
                if (nc[a] == 1) {
                    ++ones;
                    where = a;
                }
            }
        if (nonzero == 1 && ones == 1) out.generator_keys[where] = key;
        out.coords.emplace(key, std::move(nc));
    }
    return out;
}

}  // namespace scchar
