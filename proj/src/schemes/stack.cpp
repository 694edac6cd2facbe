#include "common.hpp"

#include "pmatch/error.hpp"

namespace pmatch {

StackPairs stack_match(const std::vector<std::size_t>& ids, const std::vector<bool>& is_red) {
    StackPairs out;
    std::vector<std::size_t> reds;
    for (std::size_t n = 0; n < ids.size(); ++n) {
        if (is_red[n]) {
            reds.push_back(ids[n]);
        } else if (reds.empty()) {
            out.unmatched.push_back(ids[n]);
        } else {
            out.pairs.emplace_back(reds.back(), ids[n]);
            reds.pop_back();
        }
    }
    out.unmatched.insert(out.unmatched.end(), reds.begin(), reds.end());
    return out;
}

Matching two_colour_stack_1d(const PointConfiguration& config) {
    detail::require_one_dimensional(config, "two_colour_stack");
    std::vector<std::size_t> ids(config.size());
    std::vector<bool> red(config.size());
    for (std::size_t p = 0; p < config.size(); ++p) {
        const int c = config.colour(p);
        if (c != 0 && c != 1) fail(Errc::WrongRule, "two_colour_stack needs two colours");
        ids[p] = p;
        red[p] = c == 0;
    }
    auto pairs = stack_match(ids, red);
    Matching out;
    out.families.reserve(pairs.pairs.size());
    for (auto [r, b] : pairs.pairs) out.families.push_back(Family{{r, b}, 0});
    out.unmatched = std::move(pairs.unmatched);
    return out;
}

Matching two_colour_stack_1d(const PointConfiguration& config, const MatchingRule& rule) {
    if (rule.q() != 2 || rule.k() != 1 || rule.type(0).counts != std::vector<int>{1, 1})
        fail(Errc::WrongRule, "two_colour_stack needs V = {(1,1)}");
    return two_colour_stack_1d(config);
}

}  // namespace pmatch
