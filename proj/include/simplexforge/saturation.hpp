#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/linalg.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge {

namespace detail {

inline bool witness_search(const FiniteMetricSpace& x,
                           const std::vector<std::size_t>& targets,
                           const std::vector<std::size_t>& pool,
                           std::vector<std::size_t>& chosen,
                           std::vector<bool>& used) {
    std::size_t n = targets.size();
    if (chosen.size() == n) return true;
    for (std::size_t c = 0; c < pool.size(); ++c) {
        if (used[c]) continue;
        chosen.push_back(pool[c]);
        RationalMatrix m = linalg::zeros(n, chosen.size());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < chosen.size(); ++j)
                m[i][j] = x.d[targets[i]][chosen[j]];
        if (linalg::rank(std::move(m)) == chosen.size()) {
            used[c] = true;
            if (witness_search(x, targets, pool, chosen, used)) return true;
            used[c] = false;
        }
        chosen.pop_back();
    }
    return false;
}

} // namespace detail

// Finds pool points d_1..d_n whose evaluation matrix [d(x_i, d_j)] is
// invertible, by the inductive search of the saturation argument: extend a
// full-rank prefix one column at a time in pool order, backtracking when a
// prefix dead-ends. For n = 1 this picks the first pool point at positive
// distance. Throws when the pool admits no witness at all.
inline std::vector<std::string> saturation_witnesses(const std::vector<std::string>& targets,
                                                     const std::vector<std::string>& pool,
                                                     const FiniteMetricSpace& x) {
    if (targets.empty()) throw domain_error("saturation_witnesses: no targets");
    std::vector<std::size_t> target_idx, pool_idx;
    for (const auto& t : targets) target_idx.push_back(x.index_of(t));
    for (const auto& p : pool) pool_idx.push_back(x.index_of(p));

    std::vector<std::size_t> chosen;
    std::vector<bool> used(pool_idx.size(), false);
    if (!detail::witness_search(x, target_idx, pool_idx, chosen, used))
        throw domain_error("saturation_witnesses: pool exhausted without a full-rank matrix");

    std::vector<std::string> out;
    out.reserve(chosen.size());
    for (std::size_t idx : chosen) out.push_back(x.labels[idx]);
    return out;
}

// The exact determinant of the witness evaluation matrix, for certification.
inline Rational witness_determinant(const std::vector<std::string>& targets,
                                    const std::vector<std::string>& witnesses,
                                    const FiniteMetricSpace& x) {
    if (targets.size() != witnesses.size())
        throw domain_error("witness_determinant: size mismatch");
    std::size_t n = targets.size();
    RationalMatrix m = linalg::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = x.dist(targets[i], witnesses[j]);
    return linalg::det(std::move(m));
}

} // namespace simplexforge
