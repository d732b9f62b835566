#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "siting/simplex.hpp"

namespace lp = siting::lp;

TEST(Simplex, SmallMaximization) {
    // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  -> (2, 6), 36
    lp::Program p;
    auto x = p.add_variable("x", -3.0);
    auto y = p.add_variable("y", -5.0);
    p.add_row("c1", {{x, 1.0}}, lp::Sense::LessEqual, 4.0);
    p.add_row("c2", {{y, 2.0}}, lp::Sense::LessEqual, 12.0);
    p.add_row("c3", {{x, 3.0}, {y, 2.0}}, lp::Sense::LessEqual, 18.0);
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, lp::Status::Optimal);
    EXPECT_NEAR(s.x[x], 2.0, 1e-12);
    EXPECT_NEAR(s.x[y], 6.0, 1e-12);
    EXPECT_NEAR(s.objective, -36.0, 1e-12);
}

TEST(Simplex, EqualityAndGreaterEqualRows) {
    // min x + 2y  s.t. x + y = 1, x >= 0.25, y >= 0.1
    lp::Program p;
    auto x = p.add_variable("x", 1.0);
    auto y = p.add_variable("y", 2.0);
    p.add_row("sum", {{x, 1.0}, {y, 1.0}}, lp::Sense::Equal, 1.0);
    p.add_row("xlo", {{x, 1.0}}, lp::Sense::GreaterEqual, 0.25);
    p.add_row("ylo", {{y, 1.0}}, lp::Sense::GreaterEqual, 0.1);
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, lp::Status::Optimal);
    EXPECT_NEAR(s.x[x], 0.9, 1e-12);
    EXPECT_NEAR(s.x[y], 0.1, 1e-12);
}

TEST(Simplex, InfeasibleAndUnbounded) {
    lp::Program inf;
    auto a = inf.add_variable("a");
    inf.add_row("lo", {{a, 1.0}}, lp::Sense::GreaterEqual, 2.0);
    inf.add_row("hi", {{a, 1.0}}, lp::Sense::LessEqual, 1.0);
    EXPECT_EQ(lp::solve(inf).status, lp::Status::Infeasible);

    lp::Program unb;
    auto b = unb.add_variable("b", -1.0);
    unb.add_row("lo", {{b, 1.0}}, lp::Sense::GreaterEqual, 1.0);
    EXPECT_EQ(lp::solve(unb).status, lp::Status::Unbounded);
}

TEST(Simplex, RedundantEqualityRows) {
    lp::Program p;
    auto x = p.add_variable("x", 1.0);
    auto y = p.add_variable("y", 1.0);
    p.add_row("e1", {{x, 1.0}, {y, 1.0}}, lp::Sense::Equal, 2.0);
    p.add_row("e2", {{x, 2.0}, {y, 2.0}}, lp::Sense::Equal, 4.0);
    const auto s = lp::solve(p);
    ASSERT_EQ(s.status, lp::Status::Optimal);
    EXPECT_NEAR(s.x[x] + s.x[y], 2.0, 1e-12);
}

TEST(Simplex, ModelListing) {
    lp::Program p;
    auto x = p.add_variable("w_A");
    auto chi = p.add_variable("chi", 1.0);
    p.add_row("dev_pos", {{x, 1.0}, {chi, -1.0}}, lp::Sense::LessEqual, 0.5);
    const auto text = p.to_lp_string();
    EXPECT_NE(text.find("Minimize"), std::string::npos);
    EXPECT_NE(text.find("obj: + 1 chi"), std::string::npos);
    EXPECT_NE(text.find("dev_pos: + 1 w_A - 1 chi <= 0.5"), std::string::npos);
    EXPECT_NE(text.find("End"), std::string::npos);
}

// Random bounded LPs against exact vertex enumeration.
TEST(Simplex, MatchesVertexEnumerationOnRandomPrograms) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_int_distribution<int> nvars(2, 4), nrows(1, 5);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = nvars(rng), m = nrows(rng);
        lp::Program p;
        std::vector<double> c(n);
        for (int j = 0; j < n; ++j) {
            c[j] = coef(rng);
            p.add_variable("x" + std::to_string(j), c[j]);
        }
        std::vector<std::vector<double>> g;
        std::vector<double> h;
        for (int i = 0; i < m; ++i) {
            std::vector<double> row(n);
            std::vector<lp::Program::Term> terms;
            for (int j = 0; j < n; ++j) {
                row[j] = coef(rng);
                terms.push_back({static_cast<std::size_t>(j), row[j]});
            }
            const double rhs = coef(rng);
            g.push_back(row);
            h.push_back(rhs);
            p.add_row("r" + std::to_string(i), terms, lp::Sense::LessEqual, rhs);
        }
        // Box keeps everything bounded.
        std::vector<lp::Program::Term> box;
        std::vector<double> ones(n, 1.0);
        for (int j = 0; j < n; ++j)
            box.push_back({static_cast<std::size_t>(j), 1.0});
        p.add_row("box", box, lp::Sense::LessEqual, 10.0);
        g.push_back(ones);
        h.push_back(10.0);
        // One equality in a third of the trials.
        std::vector<std::vector<double>> e;
        std::vector<double> f;
        if (trial % 3 == 0) {
            std::vector<double> row(n);
            std::vector<lp::Program::Term> terms;
            for (int j = 0; j < n; ++j) {
                row[j] = std::abs(coef(rng)) + 0.1;
                terms.push_back({static_cast<std::size_t>(j), row[j]});
            }
            e.push_back(row);
            f.push_back(1.0);
            p.add_row("eq", terms, lp::Sense::Equal, 1.0);
        }

        const auto ref = oracle::vertex_enumeration(c, g, h, e, f);
        const auto s = lp::solve(p);
        if (!ref.feasible) {
            EXPECT_EQ(s.status, lp::Status::Infeasible) << "trial " << trial;
            continue;
        }
        ASSERT_EQ(s.status, lp::Status::Optimal) << "trial " << trial;
        EXPECT_NEAR(s.objective, ref.objective, 1e-8) << "trial " << trial;
        EXPECT_LE(p.max_violation(s.x), 1e-9) << "trial " << trial;
        ++checked;
    }
    EXPECT_GT(checked, 50);
}
