#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include "siting/error.hpp"
#include "siting/fuzzy.hpp"
#include "siting/simplex.hpp"

namespace siting {

/// Criteria ordered from most to least significant together with the
/// comparative significance of each criterion over the next one.
///
/// `Significance` is `double` for crisp FUCOM and `Tfn` for fuzzy F-FUCOM.
template <class Significance>
struct ComparativeChain {
    std::vector<std::string> order;
    /// significance[k] compares order[k] with order[k + 1]; size n - 1.
    std::vector<Significance> significance;
    /// Raw priorities in `order` when the chain was built from ratings; empty
    /// when significances were supplied directly.
    std::vector<double> priorities;

    std::size_t size() const noexcept { return order.size(); }

    void validate() const {
        if (order.empty())
            throw DomainError("comparative chain has no criteria");
        if (significance.size() != order.size() - 1)
            throw DomainError("comparative chain of " + std::to_string(order.size()) +
                              " criteria needs " + std::to_string(order.size() - 1) +
                              " significances, got " + std::to_string(significance.size()));
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = i + 1; j < order.size(); ++j)
                if (order[i] == order[j])
                    throw DomainError("comparative chain: duplicate criterion '" + order[i] + "'");
        for (std::size_t k = 0; k < significance.size(); ++k) {
            const double rep = representative(significance[k]);
            if (!std::isfinite(rep) || rep < 1.0 - 1e-12)
                throw DomainError("comparative significance of '" + order[k] + "' over '" +
                                  order[k + 1] + "' must be >= 1 (criteria ordered most "
                                  "significant first)");
        }
    }

    static double representative(const Significance& s) {
        if constexpr (std::is_same_v<Significance, Tfn>)
            return gmir(s);
        else
            return s;
    }
};

using CrispChain = ComparativeChain<double>;
using FuzzyChain = ComparativeChain<Tfn>;

/// Optimal weights of a chain and the consistency deviation chi.
template <class Weight>
struct WeightSolution {
    std::vector<std::string> codes;  // same order as the chain
    std::vector<Weight> weights;
    double chi = 0.0;
    bool consistent = false;

    /// Weight of `code`; throws LookupError when absent.
    const Weight& at(const std::string& code) const {
        for (std::size_t i = 0; i < codes.size(); ++i)
            if (codes[i] == code)
                return weights[i];
        throw LookupError("no weight for criterion '" + code + "'");
    }
};

using CrispSolution = WeightSolution<double>;
using FuzzySolution = WeightSolution<Tfn>;

enum class ChainMode { Crisp, Fuzzy };

struct ConsistencyThresholds {
    /// Crisp chains count as fully consistent at numerical zero.
    double crisp = 1e-6;
    /// Fuzzy chains are acceptable strictly below this deviation.
    double fuzzy = 0.10;
};

inline bool check_consistency(double chi, ChainMode mode, const ConsistencyThresholds& t = {}) {
    if (!(chi >= 0.0))
        throw InternalError("consistency deviation must be nonnegative, got " + std::to_string(chi));
    return mode == ChainMode::Crisp ? chi <= t.crisp : chi < t.fuzzy;
}

/// Sorts criteria by descending priority (declaration order on ties) and sets
/// each significance to the ratio of neighbouring priorities.
inline CrispChain chain_from_priorities(const std::vector<std::string>& codes,
                                        const std::vector<double>& priorities) {
    if (codes.empty())
        throw DomainError("cannot build a comparative chain from an empty criteria list");
    if (codes.size() != priorities.size())
        throw DomainError("criteria and priorities differ in length");
    for (std::size_t i = 0; i < priorities.size(); ++i)
        if (!(priorities[i] > 0.0) || !std::isfinite(priorities[i]))
            throw DomainError("priority of '" + codes[i] + "' must be positive");

    std::vector<std::size_t> idx(codes.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return priorities[a] > priorities[b]; });

    CrispChain chain;
    for (auto i : idx) {
        chain.order.push_back(codes[i]);
        chain.priorities.push_back(priorities[i]);
    }
    for (std::size_t k = 0; k + 1 < idx.size(); ++k)
        chain.significance.push_back(priorities[idx[k]] / priorities[idx[k + 1]]);
    chain.validate();
    return chain;
}

/// Lifts a crisp chain to the fuzzy model with degenerate (c, c, c) significances.
inline FuzzyChain to_fuzzy(const CrispChain& chain) {
    FuzzyChain out;
    out.order = chain.order;
    out.priorities = chain.priorities;
    for (double s : chain.significance)
        out.significance.push_back(Tfn::crisp(s));
    return out;
}

namespace detail {

// |a - coef * b| <= chi as two rows.
inline void add_deviation(lp::Program& p, const std::string& name, std::size_t a, std::size_t b,
                          double coef, std::size_t chi) {
    p.add_row(name + "_pos", {{a, 1.0}, {b, -coef}, {chi, -1.0}}, lp::Sense::LessEqual, 0.0);
    p.add_row(name + "_neg", {{a, -1.0}, {b, coef}, {chi, -1.0}}, lp::Sense::LessEqual, 0.0);
}

inline lp::Solution run(const lp::Program& p, const std::string& what) {
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal)
        throw SolverError(what + ": solver stopped with status '" + lp::to_string(sol.status) +
                              "' after " + std::to_string(sol.iterations) + " iterations",
                          p.to_lp_string());
    return sol;
}

}  // namespace detail

/// Largest deviation |w_k - phi_k w_{k+1}| or |w_k - phi_k phi_{k+1} w_{k+2}|
/// of crisp weights given in chain order.
inline double crisp_deviation(const CrispChain& chain, const std::vector<double>& w) {
    double chi = 0.0;
    const auto& phi = chain.significance;
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
        chi = std::max(chi, std::abs(w[k] - phi[k] * w[k + 1]));
    for (std::size_t k = 0; k + 2 < w.size(); ++k)
        chi = std::max(chi, std::abs(w[k] - phi[k] * phi[k + 1] * w[k + 2]));
    return chi;
}

/// Componentwise analogue of crisp_deviation for fuzzy weights.
inline double fuzzy_deviation(const FuzzyChain& chain, const std::vector<Tfn>& w) {
    double chi = 0.0;
    const auto& phi = chain.significance;
    auto dev = [](const Tfn& a, const Tfn& b) {
        return std::max({std::abs(a.l() - b.l()), std::abs(a.m() - b.m()), std::abs(a.u() - b.u())});
    };
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
        chi = std::max(chi, dev(w[k], phi[k] * w[k + 1]));
    for (std::size_t k = 0; k + 2 < w.size(); ++k)
        chi = std::max(chi, dev(w[k], phi[k] * phi[k + 1] * w[k + 2]));
    return chi;
}

/// Builds the crisp FUCOM program. Variables: w_1..w_n then chi.
inline lp::Program crisp_program(const CrispChain& chain) {
    const std::size_t n = chain.size();
    lp::Program p;
    for (const auto& code : chain.order)
        p.add_variable("w_" + code);
    const std::size_t chi = p.add_variable("chi", 1.0);
    const auto& phi = chain.significance;
    for (std::size_t k = 0; k + 1 < n; ++k)
        detail::add_deviation(p, "adj_" + chain.order[k], k, k + 1, phi[k], chi);
    for (std::size_t k = 0; k + 2 < n; ++k)
        detail::add_deviation(p, "trans_" + chain.order[k], k, k + 2, phi[k] * phi[k + 1], chi);
    std::vector<lp::Program::Term> sum;
    for (std::size_t j = 0; j < n; ++j)
        sum.push_back({j, 1.0});
    p.add_row("sum", std::move(sum), lp::Sense::Equal, 1.0);
    return p;
}

/// Crisp FUCOM: minimize chi over the adjacent and transitivity deviations
/// subject to sum(w) = 1, w >= 0.
inline CrispSolution solve_fucom_crisp(const CrispChain& chain,
                                       const ConsistencyThresholds& thresholds = {}) {
    chain.validate();
    const std::size_t n = chain.size();
    const auto program = crisp_program(chain);
    const auto sol = detail::run(program, "crisp FUCOM");

    std::vector<double> w(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(total > 0.0))
        throw SolverError("crisp FUCOM: zero weight total", program.to_lp_string());
    for (auto& v : w)
        v /= total;

    CrispSolution out;
    out.codes = chain.order;
    out.weights = std::move(w);
    out.chi = crisp_deviation(chain, out.weights);
    if (out.chi > sol.x[n] + 1e-8)
        throw SolverError("crisp FUCOM: returned weights violate the deviation bound",
                          program.to_lp_string());
    out.consistent = check_consistency(out.chi, ChainMode::Crisp, thresholds);
    return out;
}

/// Builds the F-FUCOM program. Variables: (l, m, u) per criterion then chi.
/// The objective is left at chi; solve_ffucom swaps it for the spread stage.
inline lp::Program fuzzy_program(const FuzzyChain& chain) {
    const std::size_t n = chain.size();
    lp::Program p;
    for (const auto& code : chain.order) {
        p.add_variable("l_" + code);
        p.add_variable("m_" + code);
        p.add_variable("u_" + code);
    }
    const std::size_t chi = p.add_variable("chi", 1.0);
    auto var = [](std::size_t j, int c) { return 3 * j + static_cast<std::size_t>(c); };
    const auto& phi = chain.significance;
    static constexpr const char* comp[] = {"l", "m", "u"};
    auto component = [](const Tfn& t, int c) { return c == 0 ? t.l() : c == 1 ? t.m() : t.u(); };

    for (std::size_t k = 0; k + 1 < n; ++k)
        for (int c = 0; c < 3; ++c)
            detail::add_deviation(p, std::string("adj_") + comp[c] + "_" + chain.order[k],
                                  var(k, c), var(k + 1, c), component(phi[k], c), chi);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const Tfn both = phi[k] * phi[k + 1];
        for (int c = 0; c < 3; ++c)
            detail::add_deviation(p, std::string("trans_") + comp[c] + "_" + chain.order[k],
                                  var(k, c), var(k + 2, c), component(both, c), chi);
    }
    for (std::size_t j = 0; j < n; ++j) {
        p.add_row("ord_lm_" + chain.order[j], {{var(j, 0), 1.0}, {var(j, 1), -1.0}},
                  lp::Sense::LessEqual, 0.0);
        p.add_row("ord_mu_" + chain.order[j], {{var(j, 1), 1.0}, {var(j, 2), -1.0}},
                  lp::Sense::LessEqual, 0.0);
    }
    std::vector<lp::Program::Term> sum;
    for (std::size_t j = 0; j < n; ++j) {
        sum.push_back({var(j, 0), 1.0 / 6.0});
        sum.push_back({var(j, 1), 4.0 / 6.0});
        sum.push_back({var(j, 2), 1.0 / 6.0});
    }
    p.add_row("sum_gmir", std::move(sum), lp::Sense::Equal, 1.0);
    return p;
}

/// F-FUCOM with componentwise deviations and the GMIR sum fixed at one.
///
/// Lexicographic: the first stage minimizes chi; the second caps chi at the
/// first-stage optimum and minimizes the total spread sum(u - l), which picks
/// a unique, reproducible point among the chi-optimal weights.
inline FuzzySolution solve_ffucom(const FuzzyChain& chain,
                                  const ConsistencyThresholds& thresholds = {}) {
    chain.validate();
    const std::size_t n = chain.size();
    auto program = fuzzy_program(chain);
    const std::size_t chi = 3 * n;
    const auto first = detail::run(program, "F-FUCOM (deviation stage)");
    const double chi_star = first.x[chi];

    program.set_cost(chi, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        program.set_cost(3 * j, -1.0);
        program.set_cost(3 * j + 2, 1.0);
    }
    program.add_row("chi_cap", {{chi, 1.0}}, lp::Sense::LessEqual, chi_star + 1e-10);
    const auto second = detail::run(program, "F-FUCOM (spread stage)");

    std::vector<Tfn> w;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        // Clamp solver round-off so the ordering invariant holds exactly.
        const double l = std::max(0.0, second.x[3 * j]);
        const double m = std::max(l, second.x[3 * j + 1]);
        const double u = std::max(m, second.x[3 * j + 2]);
        w.emplace_back(l, m, u);
        total += gmir(w.back());
    }
    if (!(total > 0.0))
        throw SolverError("F-FUCOM: zero GMIR total", program.to_lp_string());
    for (auto& t : w)
        t = Tfn(t.l() / total, t.m() / total, t.u() / total);

    FuzzySolution out;
    out.codes = chain.order;
    out.weights = std::move(w);
    out.chi = fuzzy_deviation(chain, out.weights);
    if (out.chi > chi_star + 1e-7)
        throw SolverError("F-FUCOM: spread stage drifted off the optimal deviation",
                          program.to_lp_string());
    out.consistent = check_consistency(out.chi, ChainMode::Fuzzy, thresholds);
    return out;
}

/// GMIR of every fuzzy weight, renormalized to sum to one. chi and the
/// consistency flag carry over.
inline CrispSolution defuzzify_weights(const FuzzySolution& sol) {
    CrispSolution out;
    out.codes = sol.codes;
    out.chi = sol.chi;
    out.consistent = sol.consistent;
    double total = 0.0;
    for (const auto& t : sol.weights) {
        out.weights.push_back(gmir(t));
        total += out.weights.back();
    }
    if (!(total > 0.0))
        throw DomainError("cannot defuzzify: GMIR of all weights is zero");
    for (auto& v : out.weights)
        v /= total;
    return out;
}

}  // namespace siting
