#pragma once

#include "pmatch/rational.hpp"
#include "pmatch/rules.hpp"

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

namespace pmatch {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using IntVector = std::vector<std::int64_t>;

IntMatrix type_matrix(const std::vector<FamilyType>& types);

/// Row-style Hermite normal form of the k x q type matrix.
/// transform is k x k unimodular with transform * V = [H; 0]; its last k - rank rows
/// form a basis of the integer relations {b : bV = 0}.
struct LatticeBasis {
    std::size_t q = 0;
    std::size_t rank = 0;
    IntMatrix H;                     // rank x q, positive pivots, entries above pivots reduced
    std::vector<std::size_t> pivots;  // pivot column of each row of H
    IntMatrix transform;
};

LatticeBasis hermite_basis(const IntMatrix& rows, std::size_t q);
LatticeBasis hermite_basis(const MatchingRule& rule);

bool is_full_lattice(const MatchingRule& rule);

/// Integer coefficients n with n * H = x, or nullopt when x is outside the lattice.
std::optional<IntVector> solve_in_basis(const LatticeBasis& basis, std::span<const std::int64_t> x);
bool in_lattice(std::span<const std::int64_t> x, const LatticeBasis& basis);
bool in_lattice(std::span<const std::int64_t> x, const MatchingRule& rule);

/// Z^q / L for a full-rank lattice, via the Smith normal form.
class QuotientGroup {
  public:
    QuotientGroup(IntVector invariant_factors, IntMatrix column_transform);

    [[nodiscard]] const IntVector& invariant_factors() const noexcept { return factors_; }
    [[nodiscard]] std::int64_t order() const noexcept { return order_; }
    [[nodiscard]] std::size_t q() const noexcept { return factors_.size(); }

    /// Canonical residues of x * Q modulo the invariant factors.
    [[nodiscard]] IntVector coset_map(std::span<const std::int64_t> x) const;
    /// Mixed-radix index in [0, order) of coset_map(x).
    [[nodiscard]] std::int64_t coset_index(std::span<const std::int64_t> x) const;
    /// Index of (coset + e_colour); table lookup.
    [[nodiscard]] std::int64_t step(std::int64_t coset, std::size_t colour) const {
        return step_[static_cast<std::size_t>(coset) * factors_.size() + colour];
    }

  private:
    [[nodiscard]] std::int64_t index_of(const IntVector& residues) const;

    IntVector factors_;
    IntMatrix transform_;
    std::int64_t order_ = 1;
    std::vector<std::int64_t> step_;
};

/// Errors: RankDeficient when rank(L) < q (the quotient is infinite).
QuotientGroup quotient_group(const MatchingRule& rule);
QuotientGroup quotient_group(const IntMatrix& rows, std::size_t q);

std::size_t lattice_rank(const MatchingRule& rule);

/// Non-negative integer solution to n V = x.
struct MatchabilityWitness {
    std::vector<std::int64_t> n;
};

/// Membership in the non-negative lattice, memoized per rule.
///
/// Search is a DP over {y : 0 <= y <= x} subtracting family types in order;
/// the memo maps (first usable type, remaining vector) to feasibility. Safe for
/// concurrent use: lookups take a shared lock, insertions an exclusive one.
class Matchability {
  public:
    explicit Matchability(const MatchingRule& rule);
    explicit Matchability(std::vector<FamilyType> types);

    [[nodiscard]] bool is_matchable(std::span<const int> x) const;
    /// Lexicographically smallest n in N^k with nV = x.
    [[nodiscard]] std::optional<MatchabilityWitness> witness(std::span<const int> x) const;

    void clear();
    [[nodiscard]] std::size_t memo_size() const;
    [[nodiscard]] const std::vector<FamilyType>& types() const noexcept { return types_; }

  private:
    struct KeyHash {
        std::size_t operator()(const std::vector<int>& key) const noexcept;
    };

    bool feasible(std::size_t first, std::vector<int>& y) const;

    std::vector<FamilyType> types_;
    std::size_t q_;
    // suffix_support_[j][i]: some type >= j has a positive count of colour i
    std::vector<std::vector<bool>> suffix_support_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::vector<int>, bool, KeyHash> memo_;
};

std::optional<MatchabilityWitness> matchable(std::span<const int> x, const MatchingRule& rule);

/// Integer basis of {b in Z^k : bV = 0}, in Hermite normal form.
IntMatrix relation_basis(const MatchingRule& rule);

/// Sum of l1 norms of a relation basis; 0 when V has no integer relations.
Rational dual_alpha(const MatchingRule& rule);

}  // namespace pmatch
