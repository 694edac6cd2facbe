#pragma once

#include "pmatch/rational.hpp"

#include <cstddef>
#include <vector>

namespace pmatch {

/// maximize c.x subject to A x = b, x >= 0, over exact rationals.
struct LinearProgram {
    std::vector<RationalVector> A;
    RationalVector b;
    RationalVector c;

    [[nodiscard]] std::size_t rows() const noexcept { return A.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return c.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    RationalVector x;
    Rational objective;
};

/// Two-phase tableau simplex with Bland's rule; deterministic and cycle-free.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace pmatch
