#include "common.hpp"

#include "pmatch/error.hpp"

namespace pmatch {

Matching factor_exp_1d(const DiscreteConfiguration& discrete, const PointConfiguration& config,
                       const MatchingRule& rule, const FactorOptions& options) {
    detail::require_one_dimensional(config, "factor_exp");
    if (!is_full_lattice(rule)) fail(Errc::LatticeNotFull, "factor_exp needs L = Z^q");
    detail::require_underconstrained(rule, "factor_exp");
    const auto epsilon = options.epsilon ? *options.epsilon : epsilon_log2(discrete);
    if (epsilon.size() != discrete.size()) fail(Errc::DimensionMismatch, "one epsilon bit per site expected");

    const Matchability matchability(rule);
    Matching out;
    const std::size_t first = std::min(options.first_site, discrete.size());
    for (std::size_t n = 0; n < first; ++n) out.unmatched.push_back(discrete.sites[n].point);
    detail::BlockBuffer block(rule.q());
    for (std::size_t n = first; n < discrete.size(); ++n) {
        const auto& site = discrete.sites[n];
        block.add(site.point, site.colour);
        if (epsilon[n] && matchability.is_matchable(block.counts))
            detail::close_block(block, config, matchability, out);
    }
    out.unmatched.insert(out.unmatched.end(), block.points.begin(), block.points.end());
    return out;
}

}  // namespace pmatch
