#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "siting/criteria.hpp"
#include "siting/decision_matrix.hpp"
#include "siting/error.hpp"

namespace siting {

namespace detail {

// Weight for each matrix column; the weight set must cover exactly the
// matrix columns.
inline std::vector<double> align_weights(const DecisionMatrix& m, std::span<const CodedWeight> w) {
    if (w.size() != m.cols())
        throw DomainError("weights cover " + std::to_string(w.size()) + " criteria, matrix has " +
                          std::to_string(m.cols()));
    std::vector<double> out(m.cols(), 0.0);
    std::vector<bool> seen(m.cols(), false);
    for (const auto& cw : w) {
        std::size_t j = m.cols();
        for (std::size_t k = 0; k < m.cols(); ++k)
            if (m.codes()[k] == cw.code)
                j = k;
        if (j == m.cols())
            throw DomainError("weight for '" + cw.code + "' has no matrix column");
        if (seen[j])
            throw DomainError("duplicate weight for '" + cw.code + "'");
        seen[j] = true;
        out[j] = cw.weight;
    }
    return out;
}

inline std::vector<double> weighted_sum(const DecisionMatrix& m, const std::vector<double>& w) {
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += m(i, j) * w[j];
        out[i] = s;
    }
    return out;
}

}  // namespace detail

/// Weighted-sum suitability A_i = sum_j x_ij w_j over a normalized matrix.
inline std::vector<double> score(const DecisionMatrix& normalized, std::span<const CodedWeight> w) {
    if (!normalized.normalized())
        throw DomainError("scoring requires a normalized decision matrix");
    return detail::weighted_sum(normalized, detail::align_weights(normalized, w));
}

enum class GroupMode {
    /// Global weights as-is; the four group scores add up to the overall score.
    Overall,
    /// Category weights rescaled to sum to one within the group.
    Renormalized,
};

inline GroupMode parse_group_mode(std::string_view s) {
    if (s == "overall")
        return GroupMode::Overall;
    if (s == "renormalized")
        return GroupMode::Renormalized;
    throw DomainError("unknown group mode '" + std::string(s) + "' (expected overall or renormalized)");
}

inline constexpr std::string_view to_string(GroupMode m) noexcept {
    return m == GroupMode::Overall ? "overall" : "renormalized";
}

/// Weighted sum restricted to the columns of one category.
inline std::vector<double> group_scores(const DecisionMatrix& normalized,
                                        std::span<const CodedWeight> w, Category category,
                                        GroupMode mode = GroupMode::Overall) {
    if (!normalized.normalized())
        throw DomainError("scoring requires a normalized decision matrix");
    auto aligned = detail::align_weights(normalized, w);
    double in_group = 0.0;
    for (std::size_t j = 0; j < aligned.size(); ++j) {
        const auto it = std::find_if(w.begin(), w.end(),
                                     [&](const CodedWeight& cw) { return cw.code == normalized.codes()[j]; });
        if (it->category != category)
            aligned[j] = 0.0;
        else
            in_group += aligned[j];
    }
    if (mode == GroupMode::Renormalized && in_group > 0.0)
        for (auto& v : aligned)
            v /= in_group;
    return detail::weighted_sum(normalized, aligned);
}

inline std::vector<double> group_scores(const DecisionMatrix& normalized,
                                        std::span<const CodedWeight> w, std::string_view category,
                                        GroupMode mode = GroupMode::Overall) {
    return group_scores(normalized, w, category_or_throw(category), mode);
}

/// Standard competition ranking (1, 2, 2, 4), 1 = best.
struct Ranking {
    std::vector<int> rank;     // per input position
    std::vector<bool> tied;    // shares its score with another site
    std::vector<std::size_t> listing;  // input positions, best first, ties by id
};

/// Ranks scores in descending order. Equal scores share the better rank; the
/// listing orders tied sites lexicographically by id (by position when no ids
/// are given).
inline Ranking rank(std::span<const double> scores, std::span<const std::string> ids = {}) {
    if (scores.empty())
        throw DomainError("nothing to rank");
    if (!ids.empty() && ids.size() != scores.size())
        throw DomainError("rank: ids and scores differ in length");
    for (double s : scores)
        if (!std::isfinite(s))
            throw DomainError("rank: non-finite score");

    Ranking r;
    r.listing.resize(scores.size());
    std::iota(r.listing.begin(), r.listing.end(), std::size_t{0});
    std::sort(r.listing.begin(), r.listing.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b])
            return scores[a] > scores[b];
        if (!ids.empty() && ids[a] != ids[b])
            return ids[a] < ids[b];
        return a < b;
    });
    r.rank.assign(scores.size(), 0);
    r.tied.assign(scores.size(), false);
    for (std::size_t pos = 0; pos < r.listing.size(); ++pos) {
        const auto i = r.listing[pos];
        if (pos > 0 && scores[r.listing[pos - 1]] == scores[i]) {
            r.rank[i] = r.rank[r.listing[pos - 1]];
            r.tied[i] = true;
            r.tied[r.listing[pos - 1]] = true;
        } else {
            r.rank[i] = static_cast<int>(pos) + 1;
        }
    }
    return r;
}

/// Min-max over sites for display: best 1, worst 0, all 0.5 when every score
/// is equal.
inline std::vector<double> display_normalize(std::span<const double> scores) {
    if (scores.empty())
        return {};
    const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
    const double range = *hi - *lo;
    std::vector<double> out(scores.size(), 0.5);
    if (range > 0.0)
        for (std::size_t i = 0; i < scores.size(); ++i)
            out[i] = std::clamp((scores[i] - *lo) / range, 0.0, 1.0);
    return out;
}

/// Pairs of sites whose relative order differs between two score vectors.
/// Differences within `tie_tolerance` count as ties, never as reversals.
inline std::vector<std::pair<std::size_t, std::size_t>> rank_reversals(
    std::span<const double> before, std::span<const double> after, double tie_tolerance = 1e-12) {
    if (before.size() != after.size())
        throw DomainError("rank_reversals: score vectors differ in length");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < before.size(); ++i)
        for (std::size_t j = i + 1; j < before.size(); ++j) {
            const double db = before[i] - before[j];
            const double da = after[i] - after[j];
            if (std::abs(db) > tie_tolerance && std::abs(da) > tie_tolerance &&
                (db > 0) != (da > 0))
                out.emplace_back(i, j);
        }
    return out;
}

/// Applies analyst overrides to a weight set. Overridden codes keep their
/// value; the free codes share the remaining mass in proportion to their
/// baseline weights. When every code is overridden the set is rescaled to
/// sum to one.
inline std::vector<CodedWeight> apply_overrides(std::span<const CodedWeight> baseline,
                                                const std::map<std::string, double>& overrides) {
    for (const auto& [code, value] : overrides) {
        if (std::none_of(baseline.begin(), baseline.end(),
                         [&](const CodedWeight& w) { return w.code == code; }))
            throw LookupError("unknown code '" + code + "'");
        if (!(value >= 0.0) || !std::isfinite(value))
            throw DomainError("override for '" + code + "' must be a nonnegative number");
    }
    std::vector<CodedWeight> out(baseline.begin(), baseline.end());
    if (overrides.empty())
        return out;
    double fixed = 0.0, free_total = 0.0;
    bool any_free = false;
    for (const auto& w : out) {
        if (auto it = overrides.find(w.code); it != overrides.end()) {
            fixed += it->second;
        } else {
            free_total += w.weight;
            any_free = true;
        }
    }

    if (!any_free) {
        if (!(fixed > 0.0))
            throw DomainError("overrides cover every criterion but sum to zero");
        for (auto& w : out)
            w.weight = overrides.at(w.code) / fixed;
        return out;
    }
    if (fixed > 1.0 + 1e-12)
        throw DomainError("overrides sum to " + std::to_string(fixed) +
                          " (> 1) while other criteria remain free");
    const double remaining = std::max(0.0, 1.0 - fixed);
    if (remaining > 0.0 && !(free_total > 0.0))
        throw DomainError("cannot distribute the remaining weight: free criteria all weigh zero");
    const double factor = remaining > 0.0 ? remaining / free_total : 0.0;
    for (auto& w : out) {
        if (auto it = overrides.find(w.code); it != overrides.end())
            w.weight = it->second;
        else
            w.weight *= factor;
    }
    return out;
}

struct WhatIfReport {
    std::map<std::string, double> overrides;
    std::vector<CodedWeight> weights;  // renormalized full set
    std::vector<double> baseline_scores;
    std::vector<double> scores;
    Ranking baseline_ranking;
    Ranking ranking;
    /// (i, j) row pairs, i < j, whose order flipped; each unordered pair once.
    std::vector<std::pair<std::size_t, std::size_t>> reversals;

    std::size_t reversal_count() const noexcept { return reversals.size(); }
};

inline WhatIfReport whatif(std::span<const CodedWeight> baseline,
                           const std::map<std::string, double>& overrides,
                           const DecisionMatrix& normalized) {
    WhatIfReport r;
    r.overrides = overrides;
    r.weights = apply_overrides(baseline, overrides);
    r.baseline_scores = score(normalized, baseline);
    r.scores = score(normalized, r.weights);
    r.baseline_ranking = rank(r.baseline_scores, normalized.site_ids());
    r.ranking = rank(r.scores, normalized.site_ids());
    r.reversals = rank_reversals(r.baseline_scores, r.scores);
    return r;
}

}  // namespace siting
