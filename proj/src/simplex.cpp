#include "pmatch/simplex.hpp"

#include "pmatch/error.hpp"

#include <optional>

namespace pmatch {

namespace {

class Tableau {
  public:
    Tableau(std::vector<RationalVector> rows, std::vector<std::size_t> basis)
        : t_(std::move(rows)), basis_(std::move(basis)) {}

    [[nodiscard]] std::size_t rows() const { return t_.size(); }
    [[nodiscard]] std::size_t cols() const { return t_.empty() ? 0 : t_.front().size() - 1; }
    [[nodiscard]] const Rational& rhs(std::size_t i) const { return t_[i].back(); }
    [[nodiscard]] const Rational& at(std::size_t i, std::size_t j) const { return t_[i][j]; }
    [[nodiscard]] std::size_t basic(std::size_t i) const { return basis_[i]; }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = t_[row][col];
        for (auto& v : t_[row]) v /= p;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == row || t_[i][col] == 0) continue;
            const Rational f = t_[i][col];
            for (std::size_t j = 0; j < t_[i].size(); ++j)
                if (t_[row][j] != 0) t_[i][j] -= f * t_[row][j];
        }
        basis_[row] = col;
    }

    void drop_row(std::size_t row) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(row));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
    }

    /// Maximizes cost.x restricted to columns [0, active_cols). Returns false if unbounded.
    bool optimize(const RationalVector& cost, std::size_t active_cols) {
        for (;;) {
            // Bland: lowest-index column with positive reduced cost enters.
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < active_cols && !entering; ++j) {
                Rational reduced = cost[j];
                for (std::size_t i = 0; i < rows(); ++i)
                    if (t_[i][j] != 0) reduced -= cost[basis_[i]] * t_[i][j];
                if (reduced > 0) entering = j;
            }
            if (!entering) return true;
            const std::size_t col = *entering;
            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (t_[i][col] <= 0) continue;
                Rational ratio = rhs(i) / t_[i][col];
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (!leaving) return false;
            pivot(*leaving, col);
        }
    }

  private:
    std::vector<RationalVector> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const std::size_t m = lp.rows();
    const std::size_t n = lp.cols();
    if (lp.b.size() != m) fail(Errc::DimensionMismatch, "LP right-hand side length mismatch");
    for (const auto& row : lp.A)
        if (row.size() != n) fail(Errc::DimensionMismatch, "LP constraint row length mismatch");

    // Phase one: artificial columns n..n+m-1 form the starting basis.
    std::vector<RationalVector> rows(m, RationalVector(n + m + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = lp.b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = flip ? Rational(-lp.A[i][j]) : lp.A[i][j];
        rows[i][n + i] = 1;
        rows[i][n + m] = flip ? Rational(-lp.b[i]) : lp.b[i];
        basis[i] = n + i;
    }
    Tableau tab(std::move(rows), std::move(basis));
    RationalVector phase1(n + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
    tab.optimize(phase1, n + m);

    Rational infeasibility = 0;
    for (std::size_t i = 0; i < tab.rows(); ++i)
        if (tab.basic(i) >= n) infeasibility += tab.rhs(i);
    LpResult result;
    if (infeasibility != 0) {
        result.status = LpStatus::Infeasible;
        return result;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < tab.rows();) {
        if (tab.basic(i) < n) {
            ++i;
            continue;
        }
        std::optional<std::size_t> col;
        for (std::size_t j = 0; j < n && !col; ++j)
            if (tab.at(i, j) != 0) col = j;
        if (col) {
            tab.pivot(i, *col);
            ++i;
        } else {
            tab.drop_row(i);
        }
    }

    RationalVector cost(n + m, Rational(0));
    for (std::size_t j = 0; j < n; ++j) cost[j] = lp.c[j];
    if (!tab.optimize(cost, n)) {
        result.status = LpStatus::Unbounded;
        return result;
    }
    result.status = LpStatus::Optimal;
    result.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.rows(); ++i)
        if (tab.basic(i) < n) result.x[tab.basic(i)] = tab.rhs(i);
    result.objective = dot(lp.c, result.x);
    return result;
}

}  // namespace pmatch
