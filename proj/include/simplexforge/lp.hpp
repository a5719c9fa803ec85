#pragma once

#include <cstddef>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/linalg.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    std::vector<Rational> x;  // primal solution, empty unless Optimal
    Rational objective = Rational(0);

    bool optimal() const { return status == Status::Optimal; }
};

// Exact two-phase primal simplex for
//     minimize c.x   subject to   A x = b,  x >= 0,
// written from scratch over rationals. Bland's rule (lowest eligible index
// entering, lowest basis index leaving on ratio ties) guarantees termination;
// there is no tolerance anywhere. Every hull/extreme/face decision in the
// project routes through here.
class Simplex {
public:
    Simplex(RationalMatrix a, std::vector<Rational> b, std::vector<Rational> c)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
        rows_ = a_.size();
        cols_ = rows_ == 0 ? 0 : a_[0].size();
        if (b_.size() != rows_) throw domain_error("lp: rhs size mismatch");
        if (c_.size() != cols_) throw domain_error("lp: objective size mismatch");
        for (const auto& row : a_)
            if (row.size() != cols_) throw domain_error("lp: ragged constraint matrix");
    }

    Solution solve() {
        for (std::size_t r = 0; r < rows_; ++r)
            if (b_[r] < 0) {
                for (auto& v : a_[r]) v = -v;
                b_[r] = -b_[r];
            }

        // Tableau columns: structural variables, then one artificial per row,
        // then the rhs.
        total_ = cols_ + rows_;
        tab_ = linalg::zeros(rows_, total_ + 1);
        basis_.assign(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t j = 0; j < cols_; ++j) tab_[r][j] = a_[r][j];
            tab_[r][cols_ + r] = 1;
            tab_[r][total_] = b_[r];
            basis_[r] = cols_ + r;
        }

        // Phase 1: minimize the sum of artificials.
        std::vector<Rational> phase1(total_, Rational(0));
        for (std::size_t r = 0; r < rows_; ++r) phase1[cols_ + r] = 1;
        load_cost_row(phase1);
        if (run(total_) != Status::Optimal)
            throw domain_error("lp: phase 1 unbounded");  // cannot happen
        if (-z_[total_] != 0)
            return {Status::Infeasible, {}, Rational(0)};
        expel_artificials();

        // Phase 2: original objective, artificial columns frozen out.
        std::vector<Rational> phase2(total_, Rational(0));
        for (std::size_t j = 0; j < cols_; ++j) phase2[j] = c_[j];
        load_cost_row(phase2);
        Status st = run(cols_);

        Solution sol;
        sol.status = st;
        if (st == Status::Optimal) {
            sol.x.assign(cols_, Rational(0));
            for (std::size_t r = 0; r < rows_; ++r)
                if (basis_[r] < cols_) sol.x[basis_[r]] = tab_[r][total_];
            sol.objective = -z_[total_];
        }
        return sol;
    }

private:
    // z_[j] = reduced cost of column j; z_[total_] = -(objective value).
    void load_cost_row(const std::vector<Rational>& cost) {
        z_.assign(total_ + 1, Rational(0));
        for (std::size_t j = 0; j < total_; ++j) z_[j] = cost[j];
        for (std::size_t r = 0; r < rows_; ++r) {
            const Rational& cb = cost[basis_[r]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= total_; ++j)
                if (tab_[r][j] != 0) z_[j] -= cb * tab_[r][j];
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        Rational p = tab_[row][col];
        if (p != 1)
            for (auto& v : tab_[row])
                if (v != 0) v /= p;
        tab_[row][col] = 1;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || tab_[r][col] == 0) continue;
            Rational factor = tab_[r][col];
            for (std::size_t j = 0; j <= total_; ++j)
                if (tab_[row][j] != 0) tab_[r][j] -= factor * tab_[row][j];
            tab_[r][col] = 0;
        }
        if (z_[col] != 0) {
            Rational factor = z_[col];
            for (std::size_t j = 0; j <= total_; ++j)
                if (tab_[row][j] != 0) z_[j] -= factor * tab_[row][j];
            z_[col] = 0;
        }
        basis_[row] = col;
    }

    Status run(std::size_t usable_cols) {
        for (;;) {
            std::size_t entering = usable_cols;
            for (std::size_t j = 0; j < usable_cols; ++j)
                if (z_[j] < 0) { entering = j; break; }
            if (entering == usable_cols) return Status::Optimal;

            std::size_t leave_row = rows_;
            Rational best_ratio(0);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (tab_[r][entering] <= 0) continue;
                Rational ratio = tab_[r][total_] / tab_[r][entering];
                if (leave_row == rows_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leave_row])) {
                    leave_row = r;
                    best_ratio = ratio;
                }
            }
            if (leave_row == rows_) return Status::Unbounded;
            pivot(leave_row, entering);
        }
    }

    // After phase 1, pivot remaining artificial basics onto structural
    // columns; rows with no structural entry are redundant and get cleared.
    void expel_artificials() {
        for (std::size_t r = 0; r < rows_; ++r) {
            if (basis_[r] < cols_) continue;
            std::size_t col = cols_;
            for (std::size_t j = 0; j < cols_; ++j)
                if (tab_[r][j] != 0) { col = j; break; }
            if (col < cols_) {
                pivot(r, col);
            } else {
                for (auto& v : tab_[r]) v = 0;
                tab_[r][basis_[r]] = 1;
            }
        }
    }

    RationalMatrix a_;
    std::vector<Rational> b_, c_;
    std::size_t rows_ = 0, cols_ = 0, total_ = 0;
    RationalMatrix tab_;
    std::vector<Rational> z_;
    std::vector<std::size_t> basis_;
};

inline Solution solve(RationalMatrix a, std::vector<Rational> b, std::vector<Rational> c) {
    return Simplex(std::move(a), std::move(b), std::move(c)).solve();
}

inline bool feasible(RationalMatrix a, std::vector<Rational> b) {
    std::vector<Rational> c(a.empty() ? 0 : a[0].size(), Rational(0));
    return solve(std::move(a), std::move(b), std::move(c)).optimal();
}

} // namespace simplexforge::lp
