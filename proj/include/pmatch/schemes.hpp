#pragma once

#include "pmatch/lattice.hpp"
#include "pmatch/pointproc.hpp"
#include "pmatch/rules.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pmatch {

struct Family {
    std::vector<std::size_t> points;  // indices into the configuration
    std::size_t type_index = 0;
};

struct Matching {
    std::vector<Family> families;
    std::vector<std::size_t> unmatched;
    // Point index of the closing point of every block, for the 1-d block schemes.
    std::vector<std::size_t> block_ends;
};

/// Deterministic partition of one matchable block: lexicographically smallest
/// witness, families in type order, each colour slot taking the leftmost unused
/// point of that colour. `points` must be sorted by position. Errors: NotMatchable.
std::vector<Family> match_block(const std::vector<std::size_t>& points, const PointConfiguration& config,
                                const Matchability& matchability);
std::vector<Family> match_block(const std::vector<std::size_t>& points, const PointConfiguration& config,
                                const MatchingRule& rule);

/// Close a block whenever the accumulated colour counts become matchable.
/// Errors: WrongClassification unless underconstrained; DimensionMismatch unless d = 1.
Matching greedy_blocks_1d(const PointConfiguration& config, const MatchingRule& rule);

struct FactorOptions {
    std::size_t first_site = 0;                      // sites before this stay unmatched
    std::optional<std::vector<bool>> epsilon;        // defaults to epsilon_log2(discrete)
};

/// Good-block factor matching driven by the Z chain. Needs L = Z^q.
/// Errors: LatticeNotFull, WrongClassification.
Matching factor_exp_1d(const DiscreteConfiguration& discrete, const PointConfiguration& config,
                       const MatchingRule& rule, const FactorOptions& options = {});

/// Per-site randomness for the staged scheme; injectable for tests.
class MarkSource {
  public:
    virtual ~MarkSource() = default;
    [[nodiscard]] virtual int G(std::size_t site) const = 0;
    [[nodiscard]] virtual bool epsilon(std::size_t site, int stage) const = 0;
    [[nodiscard]] virtual bool zeta(std::size_t site, int stage) const = 0;
};

/// Marks hashed from the u value of each site.
class HashedMarks final : public MarkSource {
  public:
    explicit HashedMarks(const DiscreteConfiguration& discrete);
    [[nodiscard]] int G(std::size_t site) const override { return marks_[site].G(); }
    [[nodiscard]] bool epsilon(std::size_t site, int stage) const override { return marks_[site].epsilon(stage); }
    [[nodiscard]] bool zeta(std::size_t site, int stage) const override { return marks_[site].zeta(stage); }

  private:
    std::vector<MarkStreams> marks_;
};

struct StagedOptions {
    int s_max = 40;
    std::size_t first_site = 0;
    const MarkSource* marks = nullptr;  // defaults to HashedMarks
};

struct StagedDiagnostics {
    // Indexed by stage s >= 1 (entry 0 unused).
    std::vector<std::uint64_t> active;
    std::vector<std::uint64_t> skipped;
    std::vector<std::uint64_t> matched;
    std::uint64_t sites = 0;
    std::uint64_t overflow_points = 0;  // still active after s_max stages
    [[nodiscard]] bool stage_overflow() const noexcept { return overflow_points > 0; }
    [[nodiscard]] double skip_rate() const;
};

struct StagedResult {
    Matching matching;
    StagedDiagnostics diagnostics;
};

/// Multi-stage skipping factor matching; works for any full-rank lattice.
/// Errors: RankDeficient, WrongClassification.
StagedResult factor_staged_1d(const DiscreteConfiguration& discrete, const PointConfiguration& config,
                              const MatchingRule& rule, const StagedOptions& options = {});

/// Stack pass over a position-sorted sequence: reds are pushed, a blue takes the top red.
/// Returns (red, blue) pairs of the given ids; `is_red` is parallel to `ids`.
struct StackPairs {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> unmatched;
};
StackPairs stack_match(const std::vector<std::size_t>& ids, const std::vector<bool>& is_red);

/// Colour 0 is red, colour 1 blue; each red pairs with a blue to its right.
Matching two_colour_stack_1d(const PointConfiguration& config);
/// Same, after checking that the rule is V = {(1,1)}. Errors: WrongRule.
Matching two_colour_stack_1d(const PointConfiguration& config, const MatchingRule& rule);

/// Reduction of a critical rule to two-colour stack matchings on thinned streams.
/// Errors: WrongClassification.
Matching critical_reduction_1d(const PointConfiguration& config, const MatchingRule& rule);

enum class ViolationKind { BadIndex, Partition, Type, Coverage, Charge };
std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::size_t subject;  // family index or point index
    std::string message;
};

struct ValidationOptions {
    std::optional<Window> core;            // every point here must be matched
    bool allow_unmatched_core = false;     // count them as censored instead
    std::optional<RationalVector> charge;  // check charge . v == 0 for used types
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::size_t censored_core_points = 0;
    [[nodiscard]] bool clean() const noexcept { return violations.empty(); }
    [[nodiscard]] std::size_t count(ViolationKind kind) const;
};

ValidationReport validate_matching(const Matching& matching, const PointConfiguration& config,
                                   const MatchingRule& rule, const ValidationOptions& options = {});

/// CSV with columns family_id, type_index, x1..xd, colour (1-based); unmatched rows use -1.
void write_matching_csv(std::ostream& out, const Matching& matching, const PointConfiguration& config);

}  // namespace pmatch
