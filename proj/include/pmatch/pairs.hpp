#pragma once

#include "pmatch/geometry.hpp"
#include "pmatch/rational.hpp"
#include "pmatch/rules.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pmatch {

enum class SetStatus { Deficient, Critical, Excessive, Neutral };
std::string_view to_string(SetStatus status);

/// One non-empty colour subset S (bit i set for colour i) with its neighbourhood N(S).
struct SetEntry {
    std::uint32_t set = 0;
    std::uint32_t neighbourhood = 0;
    Rational lambda_set;
    Rational lambda_neighbourhood;
    SetStatus status = SetStatus::Neutral;
};

struct SetReport {
    std::vector<SetEntry> sets;
    bool any_deficient = false;
    bool any_critical_no_deficient = false;
    bool all_excessive_or_closed = false;

    /// Unsatisfiable, Critical or Underconstrained as read off the subset statuses.
    [[nodiscard]] ClassKind verdict() const;
};

std::uint32_t neighbourhood(std::uint32_t set, const PairGraph& graph);

/// All 2^q - 1 non-empty subsets, exact. Errors: TooManyColours (q > 20), DimensionMismatch.
SetReport classify_sets(const RationalVector& lambda, const PairGraph& graph);

/// a is symmetric; each unordered edge {i, j} carries mass a[i][j] on e_i + e_j.
struct FractionalMatching {
    std::vector<std::vector<Rational>> a;
    Rational flow;
};

/// Exact max-flow on the bipartite source/sink network; a_ij = (f_ij + f_ji) / 2
/// for i != j and a_ii = f_ii / 2.
FractionalMatching max_fractional_matching(const RationalVector& lambda, const PairGraph& graph);

/// min over S of ||lambda||_1 - lambda(S) + lambda(N(S)).
Rational min_cut_by_subsets(const RationalVector& lambda, const PairGraph& graph);

/// Colour masses covered by a: sum_{j != i} a_ij + 2 a_ii.
RationalVector covered_mass(const FractionalMatching& m);

struct ConsistencyReport {
    ClassKind set_verdict = ClassKind::Underconstrained;
    ClassKind geometry_verdict = ClassKind::Underconstrained;
    Rational flow;
    Rational min_cut;
    bool full_flow = false;
    std::vector<std::string> issues;
    [[nodiscard]] bool consistent() const noexcept { return issues.empty(); }
};

/// Cross-check of the set analysis, the flow and the cone classification.
ConsistencyReport consistency_report(const RationalVector& lambda, const PairGraph& graph);
/// Same, raising InconsistencyDetected on any disagreement.
ConsistencyReport consistency_check(const RationalVector& lambda, const PairGraph& graph);

}  // namespace pmatch
