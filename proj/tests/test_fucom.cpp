#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "siting/fucom.hpp"

using namespace siting;

namespace {

CrispChain crisp_chain(std::vector<double> phi) {
    CrispChain c;
    for (std::size_t i = 0; i <= phi.size(); ++i)
        c.order.push_back("C" + std::to_string(i + 1));
    c.significance = std::move(phi);
    return c;
}

FuzzyChain fuzzy_chain(std::vector<Tfn> phi) {
    FuzzyChain c;
    for (std::size_t i = 0; i <= phi.size(); ++i)
        c.order.push_back("C" + std::to_string(i + 1));
    c.significance = std::move(phi);
    return c;
}

double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x;
    return s;
}

}  // namespace

TEST(ChainFromPriorities, SingleCriterion) {
    const auto c = chain_from_priorities({"C1"}, {5});
    EXPECT_EQ(c.order, std::vector<std::string>{"C1"});
    EXPECT_TRUE(c.significance.empty());
}

TEST(ChainFromPriorities, RatioRule) {
    const auto c = chain_from_priorities({"C1", "C2", "C3"}, {4, 2, 1});
    EXPECT_EQ(c.order, (std::vector<std::string>{"C1", "C2", "C3"}));
    EXPECT_EQ(c.significance, (std::vector<double>{2, 2}));
}

TEST(ChainFromPriorities, TiesKeepDeclarationOrder) {
    const auto c = chain_from_priorities({"C1", "C2", "C3", "C4"}, {5, 3, 3, 1});
    EXPECT_EQ(c.order, (std::vector<std::string>{"C1", "C2", "C3", "C4"}));
    ASSERT_EQ(c.significance.size(), 3u);
    EXPECT_DOUBLE_EQ(c.significance[0], 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(c.significance[1], 1.0);
    EXPECT_DOUBLE_EQ(c.significance[2], 3.0);
    // chi = 0 is attainable for this chain (vertex enumeration).
    EXPECT_NEAR(oracle::fucom_vertices(c.significance, 4).objective, 0.0, 1e-12);

    const auto sorted = chain_from_priorities({"A", "B", "C"}, {1, 3, 3});
    EXPECT_EQ(sorted.order, (std::vector<std::string>{"B", "C", "A"}));
}

TEST(ChainFromPriorities, Errors) {
    EXPECT_THROW(chain_from_priorities({}, {}), DomainError);
    EXPECT_THROW(chain_from_priorities({"A", "B"}, {1, 0}), DomainError);
    EXPECT_THROW(chain_from_priorities({"A", "B"}, {1, -2}), DomainError);
    EXPECT_THROW(chain_from_priorities({"A", "A"}, {1, 2}), DomainError);
}

TEST(ChainFromPriorities, ScaleInvariance) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pr(0.5, 5.0), scale(0.01, 100.0);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> p(4);
        for (auto& v : p)
            v = pr(rng);
        const double k = scale(rng);
        std::vector<double> q(p);
        for (auto& v : q)
            v *= k;
        const std::vector<std::string> codes{"A", "B", "C", "D"};
        const auto a = chain_from_priorities(codes, p);
        const auto b = chain_from_priorities(codes, q);
        EXPECT_EQ(a.order, b.order);
        for (std::size_t i = 0; i < 3; ++i)
            EXPECT_NEAR(a.significance[i], b.significance[i], 1e-12);
        const auto wa = solve_fucom_crisp(a), wb = solve_fucom_crisp(b);
        for (std::size_t i = 0; i < 4; ++i)
            EXPECT_NEAR(wa.weights[i], wb.weights[i], 1e-12);
    }
}

TEST(ChainValidation, RejectsSignificanceBelowOne) {
    EXPECT_THROW(solve_fucom_crisp(crisp_chain({0.5})), DomainError);
    EXPECT_THROW(solve_ffucom(fuzzy_chain({Tfn(0.2, 0.5, 0.9)})), DomainError);
    auto bad = crisp_chain({2.0});
    bad.significance.push_back(1.0);
    EXPECT_THROW(solve_fucom_crisp(bad), DomainError);
}

TEST(CrispFucom, TwoEqualCriteria) {
    const auto s = solve_fucom_crisp(crisp_chain({1.0}));
    EXPECT_NEAR(s.weights[0], 0.5, 1e-12);
    EXPECT_NEAR(s.weights[1], 0.5, 1e-12);
    EXPECT_NEAR(s.chi, 0.0, 1e-12);
    EXPECT_TRUE(s.consistent);
}

TEST(CrispFucom, SingleCriterion) {
    const auto s = solve_fucom_crisp(crisp_chain({}));
    ASSERT_EQ(s.weights.size(), 1u);
    EXPECT_DOUBLE_EQ(s.weights[0], 1.0);
    EXPECT_EQ(s.chi, 0.0);
}

TEST(CrispFucom, DoublingChain) {
    const auto s = solve_fucom_crisp(crisp_chain({2.0, 2.0}));
    EXPECT_NEAR(s.weights[0], 4.0 / 7.0, 1e-12);
    EXPECT_NEAR(s.weights[1], 2.0 / 7.0, 1e-12);
    EXPECT_NEAR(s.weights[2], 1.0 / 7.0, 1e-12);
    EXPECT_LE(s.chi, 1e-12);

    const auto grid = oracle::grid_search_chi({2.0, 2.0}, 3, 1e-3);
    EXPECT_NEAR(grid.w[0], 4.0 / 7.0, 2e-3);
    EXPECT_NEAR(grid.w[1], 2.0 / 7.0, 2e-3);
    EXPECT_NEAR(grid.w[2], 1.0 / 7.0, 2e-3);
}

TEST(CrispFucom, MatchesOraclesOnRandomChains) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> size(2, 5);
    std::uniform_real_distribution<double> phi(1.0, 4.5);
    for (int t = 0; t < 40; ++t) {
        const int n = size(rng);
        std::vector<double> p(n - 1);
        for (auto& v : p)
            v = phi(rng);
        const auto s = solve_fucom_crisp(crisp_chain(p));
        const auto exact = oracle::fucom_vertices(p, n);
        const auto grid = oracle::grid_search_chi(p, n);
        ASSERT_TRUE(exact.feasible);
        EXPECT_NEAR(s.chi, exact.objective, 1e-9);
        EXPECT_NEAR(s.chi, grid.chi, 1e-3);
        EXPECT_GE(grid.chi, s.chi - 1e-12);
        EXPECT_NEAR(sum(s.weights), 1.0, 1e-9);
        for (double w : s.weights)
            EXPECT_GE(w, 0.0);
        // Adjacent ratios reproduce the chain.
        for (std::size_t k = 0; k + 1 < s.weights.size(); ++k)
            EXPECT_NEAR(s.weights[k] / s.weights[k + 1], p[k], 1e-6);
    }
}

TEST(CrispFucom, TwoCriterionMonotonicity) {
    double prev = 0.0;
    for (double phi = 1.0; phi <= 9.0; phi += 0.25) {
        const auto s = solve_fucom_crisp(crisp_chain({phi}));
        EXPECT_GE(s.weights[0], prev - 1e-12);
        prev = s.weights[0];
    }
}

TEST(CrispFucom, ProgramListingNamesEveryConstraint) {
    const auto text = crisp_program(crisp_chain({2.0, 3.0})).to_lp_string();
    for (const char* row : {"adj_C1_pos", "adj_C2_neg", "trans_C1_pos", "sum:"})
        EXPECT_NE(text.find(row), std::string::npos) << row;
}

TEST(FuzzyFucom, TwoEqualCriteria) {
    const auto s = solve_ffucom(fuzzy_chain({Tfn(1, 1, 1)}));
    for (const auto& w : s.weights) {
        EXPECT_NEAR(w.l(), 0.5, 1e-12);
        EXPECT_NEAR(w.m(), 0.5, 1e-12);
        EXPECT_NEAR(w.u(), 0.5, 1e-12);
    }
    EXPECT_NEAR(s.chi, 0.0, 1e-12);
}

TEST(FuzzyFucom, SingleCriterionIsCrispUnit) {
    const auto s = solve_ffucom(fuzzy_chain({}));
    ASSERT_EQ(s.weights.size(), 1u);
    EXPECT_NEAR(s.weights[0].l(), 1.0, 1e-12);
    EXPECT_NEAR(s.weights[0].m(), 1.0, 1e-12);
    EXPECT_NEAR(s.weights[0].u(), 1.0, 1e-12);
    EXPECT_EQ(s.chi, 0.0);
}

// Grid oracle over (l2, u2): with chi = 0 the first weight is phi (x) w2 and the
// GMIR sum fixes m2, so the spread-minimal point is a 2-D search.
TEST(FuzzyFucom, ModeratePairMatchesGridOracle) {
    const Tfn phi(1.5, 2, 2.5);
    const auto s = solve_ffucom(fuzzy_chain({phi}));
    EXPECT_LE(s.chi, 1e-9);

    double best = 1e9, bl = 0, bm = 0, bu = 0;
    for (int i = 0; i <= 1000; ++i)
        for (int k = i; k <= 1000; ++k) {
            const double l2 = i * 1e-3, u2 = k * 1e-3;
            const double m2 = (6.0 - 2.5 * l2 - 3.5 * u2) / 12.0;
            if (m2 < l2 - 1e-12 || m2 > u2 + 1e-12)
                continue;
            const double spread = (u2 - l2) + (2.5 * u2 - 1.5 * l2);
            if (spread < best - 1e-15) {
                best = spread, bl = l2, bm = m2, bu = u2;
            }
        }
    const auto& w1 = s.weights[0];
    const auto& w2 = s.weights[1];
    EXPECT_NEAR(w2.l(), bl, 2e-3);
    EXPECT_NEAR(w2.m(), bm, 2e-3);
    EXPECT_NEAR(w2.u(), bu, 2e-3);
    EXPECT_NEAR(w1.l(), phi.l() * w2.l(), 1e-9);
    EXPECT_NEAR(w1.m(), phi.m() * w2.m(), 1e-9);
    EXPECT_NEAR(w1.u(), phi.u() * w2.u(), 1e-9);
    EXPECT_NEAR(gmir(w1) + gmir(w2), 1.0, 1e-9);
    // Closed form of the same optimum.
    EXPECT_NEAR(w2.l(), 1.0 / 3.0, 1e-9);
    EXPECT_NEAR(w2.u(), 1.0 / 3.0, 1e-9);
}

TEST(FuzzyFucom, RandomLinguisticChainsAreValidAndReproducible) {
    const auto scale = LinguisticScale::default_scale();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> size(1, 8);
    std::uniform_int_distribution<std::size_t> term(0, scale.size() - 1);
    for (int t = 0; t < 40; ++t) {
        std::vector<Tfn> phi(size(rng) - 1);
        for (auto& v : phi)
            v = scale.entries()[term(rng)].value;
        const auto chain = fuzzy_chain(phi);
        const auto a = solve_ffucom(chain);
        const auto b = solve_ffucom(chain);
        double total = 0.0;
        for (std::size_t j = 0; j < a.weights.size(); ++j) {
            const auto& w = a.weights[j];
            EXPECT_LE(w.l(), w.m());
            EXPECT_LE(w.m(), w.u());
            EXPECT_GE(w.l(), 0.0);
            total += gmir(w);
            EXPECT_EQ(w, b.weights[j]);
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
        EXPECT_EQ(a.chi, b.chi);
        EXPECT_EQ(a.consistent, check_consistency(a.chi, ChainMode::Fuzzy));
        EXPECT_LE(fuzzy_deviation(chain, a.weights), a.chi + 1e-12);
    }
}

TEST(Defuzzify, CrispWeightsUnchanged) {
    FuzzySolution f;
    f.codes = {"A", "B"};
    f.weights = {Tfn::crisp(0.25), Tfn::crisp(0.75)};
    const auto c = defuzzify_weights(f);
    EXPECT_DOUBLE_EQ(c.weights[0], 0.25);
    EXPECT_DOUBLE_EQ(c.weights[1], 0.75);
}

TEST(Defuzzify, SymmetricWeightsGiveModalProportions) {
    FuzzySolution f;
    f.codes = {"A", "B"};
    f.weights = {Tfn(0, 0.25, 0.5), Tfn(0.5, 0.75, 1.0)};
    const auto c = defuzzify_weights(f);
    EXPECT_NEAR(c.weights[0], 0.25, 1e-15);
    EXPECT_NEAR(c.weights[1], 0.75, 1e-15);
}

TEST(Defuzzify, GmirThenRenormalize) {
    FuzzySolution f;
    f.codes = {"A", "B"};
    f.weights = {Tfn(0.2, 0.3, 0.4), Tfn(0.5, 0.7, 0.9)};
    f.chi = 0.03;
    const auto c = defuzzify_weights(f);
    EXPECT_NEAR(c.weights[0], 0.3, 1e-15);
    EXPECT_NEAR(c.weights[1], 0.7, 1e-15);
    EXPECT_EQ(c.chi, 0.03);
}

TEST(Defuzzify, AllZeroIsDegenerate) {
    FuzzySolution f;
    f.codes = {"A"};
    f.weights = {Tfn(0, 0, 0)};
    EXPECT_THROW(defuzzify_weights(f), DomainError);
}

TEST(Consistency, Thresholds) {
    EXPECT_TRUE(check_consistency(0.0, ChainMode::Crisp));
    EXPECT_FALSE(check_consistency(1e-3, ChainMode::Crisp));
    EXPECT_TRUE(check_consistency(0.09, ChainMode::Fuzzy));
    EXPECT_FALSE(check_consistency(0.10, ChainMode::Fuzzy));
    EXPECT_FALSE(check_consistency(0.15, ChainMode::Fuzzy));
    EXPECT_THROW(check_consistency(-0.01, ChainMode::Fuzzy), InternalError);
    EXPECT_TRUE(check_consistency(0.15, ChainMode::Fuzzy, {1e-6, 0.2}));
}
