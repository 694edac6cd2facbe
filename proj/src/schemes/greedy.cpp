#include "common.hpp"

namespace pmatch {

Matching greedy_blocks_1d(const PointConfiguration& config, const MatchingRule& rule) {
    detail::require_one_dimensional(config, "greedy");
    detail::require_underconstrained(rule, "greedy");
    const Matchability matchability(rule);
    Matching out;
    detail::BlockBuffer block(rule.q());
    for (std::size_t p = 0; p < config.size(); ++p) {
        block.add(p, config.colour(p));
        if (matchability.is_matchable(block.counts)) detail::close_block(block, config, matchability, out);
    }
    out.unmatched = std::move(block.points);
    return out;
}

}  // namespace pmatch
