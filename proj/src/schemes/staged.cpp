#include "common.hpp"

#include "pmatch/error.hpp"

#include <algorithm>
#include <iterator>

namespace pmatch {

HashedMarks::HashedMarks(const DiscreteConfiguration& discrete) {
    marks_.reserve(discrete.size());
    for (const auto& s : discrete.sites) marks_.emplace_back(s.u);
}

double StagedDiagnostics::skip_rate() const {
    std::uint64_t a = 0, s = 0;
    for (std::size_t i = 1; i < active.size(); ++i) {
        a += active[i];
        s += skipped[i];
    }
    return a == 0 ? 0.0 : static_cast<double>(s) / static_cast<double>(a);
}

StagedResult factor_staged_1d(const DiscreteConfiguration& discrete, const PointConfiguration& config,
                              const MatchingRule& rule, const StagedOptions& options) {
    detail::require_one_dimensional(config, "factor_staged");
    const QuotientGroup gamma = quotient_group(rule);
    detail::require_underconstrained(rule, "factor_staged");
    if (options.s_max < 1) fail(Errc::ParseError, "s_max must be at least 1");

    std::optional<HashedMarks> owned;
    const MarkSource* marks = options.marks;
    if (marks == nullptr) marks = &owned.emplace(discrete);

    const auto s_max = static_cast<std::size_t>(options.s_max);
    StagedResult result;
    auto& out = result.matching;
    auto& diag = result.diagnostics;
    diag.active.assign(s_max + 1, 0);
    diag.skipped.assign(s_max + 1, 0);
    diag.matched.assign(s_max + 1, 0);

    const std::size_t first = std::min(options.first_site, discrete.size());
    diag.sites = discrete.size() - first;
    for (std::size_t n = 0; n < first; ++n) out.unmatched.push_back(discrete.sites[n].point);

    // Sites whose first active stage is s.
    std::vector<std::vector<std::size_t>> arrivals(s_max + 1);
    for (std::size_t n = first; n < discrete.size(); ++n) {
        const auto g = static_cast<std::size_t>(marks->G(n));
        if (g >= 1 && g <= s_max) {
            arrivals[g].push_back(n);
        } else {
            out.unmatched.push_back(discrete.sites[n].point);
            ++diag.overflow_points;
        }
    }

    const Matchability matchability(rule);
    std::vector<std::size_t> skipped;
    std::vector<std::size_t> active;
    for (std::size_t s = 1; s <= s_max; ++s) {
        active.clear();
        std::merge(skipped.begin(), skipped.end(), arrivals[s].begin(), arrivals[s].end(),
                   std::back_inserter(active));
        skipped.clear();
        diag.active[s] = active.size();
        const int stage = static_cast<int>(s);

        detail::BlockBuffer block(rule.q());
        std::int64_t y = 0;
        for (auto n : active) {
            if (y == 0 && !marks->zeta(n, stage)) {
                skipped.push_back(n);
                continue;
            }
            const auto& site = discrete.sites[n];
            block.add(site.point, site.colour);
            y = gamma.step(y, static_cast<std::size_t>(site.colour));
            if (marks->epsilon(n, stage) && matchability.is_matchable(block.counts)) {
                if (y != 0) fail(Errc::InconsistencyDetected, "coset chain disagrees with matchable state");
                diag.matched[s] += block.points.size();
                detail::close_block(block, config, matchability, out);
            }
        }
        diag.skipped[s] = skipped.size();
        out.unmatched.insert(out.unmatched.end(), block.points.begin(), block.points.end());
    }
    diag.overflow_points += skipped.size();
    for (auto n : skipped) out.unmatched.push_back(discrete.sites[n].point);
    return result;
}

}  // namespace pmatch
