#pragma once

#include "pmatch/rational.hpp"

#include <compare>
#include <cstddef>
#include <vector>

namespace pmatch {

/// Number of points of each colour in one family.
struct FamilyType {
    std::vector<int> counts;

    [[nodiscard]] std::size_t colours() const noexcept { return counts.size(); }
    [[nodiscard]] int size() const noexcept;  // l1 norm
    int operator[](std::size_t i) const { return counts[i]; }
    auto operator<=>(const FamilyType&) const = default;
};

/// Colour count q, allowed family types V (k rows) and intensities lambda.
/// Immutable once validated; build with validate_rule().
class MatchingRule {
  public:
    [[nodiscard]] std::size_t q() const noexcept { return q_; }
    [[nodiscard]] std::size_t k() const noexcept { return types_.size(); }
    [[nodiscard]] const std::vector<FamilyType>& types() const noexcept { return types_; }
    [[nodiscard]] const FamilyType& type(std::size_t j) const { return types_[j]; }
    [[nodiscard]] const RationalVector& lambda() const noexcept { return lambda_; }
    [[nodiscard]] Rational total_intensity() const;
    [[nodiscard]] std::vector<double> lambda_double() const;

    /// Same V, different intensities (validated again).
    [[nodiscard]] MatchingRule with_lambda(const RationalVector& lambda) const;

    bool operator==(const MatchingRule&) const = default;

  private:
    friend MatchingRule validate_rule(std::size_t, const std::vector<std::vector<int>>&, const RationalVector&);
    std::size_t q_ = 0;
    std::vector<FamilyType> types_;
    RationalVector lambda_;
};

/// Errors: ZeroFamilyType, AllUnitVectors, NonPositiveIntensity, DimensionMismatch.
/// Duplicate rows are removed keeping first occurrences.
MatchingRule validate_rule(std::size_t q, const std::vector<std::vector<int>>& types,
                           const RationalVector& lambda);

/// Convenience overload when the intensities are integers.
MatchingRule make_rule(const std::vector<std::vector<int>>& types, const std::vector<long>& lambda);

/// Colour graph for pair rules; self-loops allowed.
class PairGraph {
  public:
    explicit PairGraph(std::size_t q);
    /// Undirected edges with 0-based endpoints.
    PairGraph(std::size_t q, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

    void add_edge(std::size_t i, std::size_t j);
    [[nodiscard]] std::size_t q() const noexcept { return q_; }
    [[nodiscard]] bool adjacent(std::size_t i, std::size_t j) const { return adj_[i * q_ + j]; }
    [[nodiscard]] std::size_t edge_count() const;

  private:
    std::size_t q_;
    std::vector<bool> adj_;
};

/// {e_i + e_j : i ~ j}, each unordered pair once, ordered by (i, j) with i <= j.
/// Errors: EmptyGraph.
std::vector<FamilyType> pair_rule_to_V(const PairGraph& graph);

}  // namespace pmatch
