#pragma once

#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "siting/error.hpp"

namespace siting::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

/// A linear program over nonnegative variables:
///
///     minimize    c^T x
///     subject to  a_i^T x (<=, >=, =) b_i
///                 x >= 0
///
/// Rows are stored sparsely; the solver densifies them.
class Program {
public:
    struct Term {
        std::size_t var;
        double coef;
    };

    struct Row {
        std::string name;
        std::vector<Term> terms;
        Sense sense;
        double rhs;
    };

    std::size_t add_variable(std::string name, double cost = 0.0) {
        names_.push_back(std::move(name));
        cost_.push_back(cost);
        return names_.size() - 1;
    }

    void set_cost(std::size_t var, double cost) { cost_.at(var) = cost; }

    void add_row(std::string name, std::vector<Term> terms, Sense sense, double rhs) {
        for (const auto& t : terms)
            if (t.var >= names_.size())
                throw InternalError("lp: row '" + name + "' references unknown variable");
        rows_.push_back({std::move(name), std::move(terms), sense, rhs});
    }

    std::size_t num_variables() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<double>& cost() const noexcept { return cost_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }

    /// Largest violation of any row or bound at `x` (0 when feasible).
    double max_violation(const std::vector<double>& x) const {
        double worst = 0.0;
        for (double v : x)
            worst = std::max(worst, -v);
        for (const auto& r : rows_) {
            double lhs = 0.0;
            for (const auto& t : r.terms)
                lhs += t.coef * x.at(t.var);
            switch (r.sense) {
            case Sense::LessEqual: worst = std::max(worst, lhs - r.rhs); break;
            case Sense::GreaterEqual: worst = std::max(worst, r.rhs - lhs); break;
            case Sense::Equal: worst = std::max(worst, std::abs(lhs - r.rhs)); break;
            }
        }
        return worst;
    }

    /// Plain-text listing in CPLEX LP style, for debugging and cross-checking
    /// the model in another solver.
    std::string to_lp_string() const {
        std::ostringstream os;
        os << std::setprecision(17);
        auto write_terms = [&](const std::vector<Term>& terms) {
            if (terms.empty())
                os << " 0";
            for (const auto& t : terms)
                os << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << ' ' << names_[t.var];
        };
        os << "Minimize\n obj:";
        std::vector<Term> obj;
        for (std::size_t j = 0; j < cost_.size(); ++j)
            if (cost_[j] != 0.0)
                obj.push_back({j, cost_[j]});
        write_terms(obj);
        os << "\nSubject To\n";
        for (const auto& r : rows_) {
            os << ' ' << r.name << ':';
            write_terms(r.terms);
            switch (r.sense) {
            case Sense::LessEqual: os << " <= "; break;
            case Sense::GreaterEqual: os << " >= "; break;
            case Sense::Equal: os << " = "; break;
            }
            os << r.rhs << '\n';
        }
        os << "Bounds\n";
        for (const auto& n : names_)
            os << ' ' << n << " >= 0\n";
        os << "End\n";
        return os.str();
    }

private:
    std::vector<std::string> names_;
    std::vector<double> cost_;
    std::vector<Row> rows_;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(Status s) noexcept {
    switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration limit";
    }
    return "?";
}

struct Solution {
    Status status = Status::Infeasible;
    std::vector<double> x;
    double objective = std::numeric_limits<double>::quiet_NaN();
    std::size_t iterations = 0;
};

struct Options {
    double pivot_tolerance = 1e-9;
    double feasibility_tolerance = 1e-9;
    /// Slack allowed in the ratio test when picking a larger pivot.
    double harris_tolerance = 1e-12;
    std::size_t max_iterations = 100000;
};

namespace detail {

// Dense tableau for the two-phase primal simplex. Entering column by Bland's
// rule (lowest index), leaving row by a two-pass Harris test. Every choice is
// deterministic, so repeated solves give identical bits. The final basic
// solution is recomputed from the original rows to shed accumulated
// round-off.
class Tableau {
public:
    Tableau(const Program& p, const Options& opt) : opt_(opt), num_structural_(p.num_variables()) {
        const auto& rows = p.rows();
        const std::size_t m = rows.size();

        std::size_t num_slack = 0, num_art = 0;
        for (const auto& r : rows) {
            Sense s = effective_sense(r);
            if (s != Sense::Equal)
                ++num_slack;
            if (s != Sense::LessEqual)
                ++num_art;
        }
        first_art_ = num_structural_ + num_slack;
        cols_ = first_art_ + num_art;
        t_.assign(m, std::vector<double>(cols_ + 1, 0.0));
        basis_.assign(m, 0);

        std::size_t slack = num_structural_, art = first_art_;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& r = rows[i];
            const double sign = r.rhs < 0 ? -1.0 : 1.0;
            for (const auto& term : r.terms)
                t_[i][term.var] += sign * term.coef;
            t_[i][cols_] = sign * r.rhs;
            switch (effective_sense(r)) {
            case Sense::LessEqual:
                t_[i][slack] = 1.0;
                basis_[i] = slack++;
                break;
            case Sense::GreaterEqual:
                t_[i][slack++] = -1.0;
                t_[i][art] = 1.0;
                basis_[i] = art++;
                break;
            case Sense::Equal:
                t_[i][art] = 1.0;
                basis_[i] = art++;
                break;
            }
        }
        allowed_.assign(cols_, true);
        original_ = t_;
        origin_.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            origin_[i] = i;
    }

    Solution solve(const std::vector<double>& cost) {
        Solution out;
        // Phase 1: minimize the sum of artificials.
        if (first_art_ < cols_) {
            std::vector<double> c1(cols_, 0.0);
            for (std::size_t j = first_art_; j < cols_; ++j)
                c1[j] = 1.0;
            Status s = iterate(c1, out.iterations);
            if (s == Status::IterationLimit) {
                out.status = s;
                return out;
            }
            if (objective_value(c1) > opt_.feasibility_tolerance) {
                out.status = Status::Infeasible;
                return out;
            }
            drive_out_artificials();
            for (std::size_t j = first_art_; j < cols_; ++j)
                allowed_[j] = false;
        }

        std::vector<double> c2(cols_, 0.0);
        for (std::size_t j = 0; j < num_structural_; ++j)
            c2[j] = cost[j];
        out.status = iterate(c2, out.iterations);
        if (out.status != Status::Optimal)
            return out;

        refine();
        out.x.assign(num_structural_, 0.0);
        for (std::size_t i = 0; i < t_.size(); ++i)
            if (basis_[i] < num_structural_)
                out.x[basis_[i]] = std::max(0.0, t_[i][cols_]);
        out.objective = 0.0;
        for (std::size_t j = 0; j < num_structural_; ++j)
            out.objective += cost[j] * out.x[j];
        return out;
    }

private:
    static Sense effective_sense(const Program::Row& r) {
        if (r.rhs >= 0 || r.sense == Sense::Equal)
            return r.sense;
        return r.sense == Sense::LessEqual ? Sense::GreaterEqual : Sense::LessEqual;
    }

    double objective_value(const std::vector<double>& c) const {
        double z = 0.0;
        for (std::size_t i = 0; i < t_.size(); ++i)
            z += c[basis_[i]] * t_[i][cols_];
        return z;
    }

    double reduced_cost(const std::vector<double>& c, std::size_t j) const {
        double d = c[j];
        for (std::size_t i = 0; i < t_.size(); ++i)
            d -= c[basis_[i]] * t_[i][j];
        return d;
    }

    Status iterate(const std::vector<double>& c, std::size_t& iterations) {
        std::vector<bool> in_basis(cols_, false);
        for (auto b : basis_)
            in_basis[b] = true;
        while (true) {
            if (iterations >= opt_.max_iterations)
                return Status::IterationLimit;
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!allowed_[j] || in_basis[j])
                    continue;
                if (reduced_cost(c, j) < -opt_.pivot_tolerance) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_)
                return Status::Optimal;

            // Two-pass ratio test: relaxed minimum ratio first, then the
            // largest pivot among the rows that attain it.
            double bound = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < t_.size(); ++i) {
                const double a = t_[i][enter];
                if (a > opt_.pivot_tolerance)
                    bound = std::min(bound, (t_[i][cols_] + opt_.harris_tolerance) / a);
            }
            std::size_t leave = t_.size();
            for (std::size_t i = 0; i < t_.size(); ++i) {
                const double a = t_[i][enter];
                if (a <= opt_.pivot_tolerance || t_[i][cols_] / a > bound)
                    continue;
                if (leave == t_.size() || a > t_[leave][enter] ||
                    (a == t_[leave][enter] && basis_[i] < basis_[leave]))
                    leave = i;
            }
            if (leave == t_.size())
                return Status::Unbounded;

            in_basis[basis_[leave]] = false;
            in_basis[enter] = true;
            pivot(leave, enter);
            ++iterations;
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        auto& pr = t_[r];
        const double p = pr[c];
        for (auto& v : pr)
            v /= p;
        pr[c] = 1.0;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == r)
                continue;
            const double f = t_[i][c];
            if (f == 0.0)
                continue;
            auto& row = t_[i];
            for (std::size_t j = 0; j <= cols_; ++j)
                row[j] -= f * pr[j];
            row[c] = 0.0;
            if (row[cols_] < 0.0 && row[cols_] > -opt_.harris_tolerance)
                row[cols_] = 0.0;
        }
        basis_[r] = c;
    }

    // After phase 1 every artificial still in the basis sits at zero. Pivot it
    // out on any structural or slack column; rows where that is impossible are
    // linearly dependent and get dropped.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < t_.size();) {
            if (basis_[i] < first_art_) {
                ++i;
                continue;
            }
            std::size_t col = first_art_;
            for (std::size_t j = 0; j < first_art_; ++j) {
                if (std::abs(t_[i][j]) > opt_.pivot_tolerance) {
                    col = j;
                    break;
                }
            }
            if (col < first_art_) {
                pivot(i, col);
                ++i;
            } else {
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                origin_.erase(origin_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    // Solves B x_B = b on the original (kept) rows by Gaussian elimination
    // with partial pivoting and writes x_B back into the rhs column. Skipped
    // when the basis matrix is numerically singular.
    void refine() {
        const std::size_t m = t_.size();
        if (m == 0)
            return;
        std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
        for (std::size_t r = 0; r < m; ++r) {
            const auto& row = original_[origin_[r]];
            for (std::size_t k = 0; k < m; ++k)
                a[r][k] = row[basis_[k]];
            a[r][m] = row[cols_];
        }
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r < m; ++r)
                if (std::abs(a[r][c]) > std::abs(a[piv][c]))
                    piv = r;
            if (std::abs(a[piv][c]) < 1e-12)
                return;
            std::swap(a[piv], a[c]);
            for (std::size_t r = c + 1; r < m; ++r) {
                const double f = a[r][c] / a[c][c];
                if (f == 0.0)
                    continue;
                for (std::size_t k = c; k <= m; ++k)
                    a[r][k] -= f * a[c][k];
            }
        }
        std::vector<double> x(m, 0.0);
        for (std::size_t c = m; c-- > 0;) {
            double v = a[c][m];
            for (std::size_t k = c + 1; k < m; ++k)
                v -= a[c][k] * x[k];
            x[c] = v / a[c][c];
        }
        for (std::size_t k = 0; k < m; ++k) {
            if (std::abs(x[k] - t_[k][cols_]) > 1e-6)
                return;
        }
        for (std::size_t k = 0; k < m; ++k)
            t_[k][cols_] = std::max(0.0, x[k]);
    }

    Options opt_;
    std::size_t num_structural_;
    std::size_t first_art_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<double>> t_;
    std::vector<std::size_t> basis_;
    std::vector<bool> allowed_;
    std::vector<std::vector<double>> original_;
    std::vector<std::size_t> origin_;
};

}  // namespace detail

inline Solution solve(const Program& program, const Options& options = {}) {
    detail::Tableau tableau(program, options);
    return tableau.solve(program.cost());
}

}  // namespace siting::lp
