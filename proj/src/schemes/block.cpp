#include "common.hpp"

#include "pmatch/error.hpp"

#include <deque>
#include <ostream>

namespace pmatch {

namespace detail {

void require_underconstrained(const MatchingRule& rule, std::string_view scheme) {
    const auto c = classify(rule);
    if (c.kind != ClassKind::Underconstrained)
        fail(Errc::WrongClassification,
             std::string(scheme) + " needs an underconstrained rule, got " + std::string(to_string(c.kind)));
}

void require_one_dimensional(const PointConfiguration& config, std::string_view scheme) {
    if (config.dim() != 1) fail(Errc::DimensionMismatch, std::string(scheme) + " runs on 1-d configurations");
}

void close_block(BlockBuffer& block, const PointConfiguration& config, const Matchability& matchability,
                 Matching& out) {
    auto families = match_block(block.points, config, matchability);
    out.block_ends.push_back(block.points.back());
    for (auto& f : families) out.families.push_back(std::move(f));
    block.reset();
}

}  // namespace detail

std::vector<Family> match_block(const std::vector<std::size_t>& points, const PointConfiguration& config,
                                const Matchability& matchability) {
    const auto& types = matchability.types();
    const std::size_t q = types.empty() ? 0 : types.front().colours();
    std::vector<int> counts(q, 0);
    std::vector<std::deque<std::size_t>> by_colour(q);
    for (auto p : points) {
        const auto c = static_cast<std::size_t>(config.colour(p));
        if (c >= q) fail(Errc::DimensionMismatch, "point colour outside the rule");
        ++counts[c];
        by_colour[c].push_back(p);
    }
    const auto w = matchability.witness(counts);
    if (!w) fail(Errc::NotMatchable, "block colour counts are not matchable");

    std::vector<Family> out;
    for (std::size_t j = 0; j < types.size(); ++j) {
        for (std::int64_t m = 0; m < w->n[j]; ++m) {
            Family f;
            f.type_index = j;
            f.points.reserve(static_cast<std::size_t>(types[j].size()));
            for (std::size_t i = 0; i < q; ++i) {
                for (int slot = 0; slot < types[j][i]; ++slot) {
                    f.points.push_back(by_colour[i].front());
                    by_colour[i].pop_front();
                }
            }
            out.push_back(std::move(f));
        }
    }
    return out;
}

std::vector<Family> match_block(const std::vector<std::size_t>& points, const PointConfiguration& config,
                                const MatchingRule& rule) {
    return match_block(points, config, Matchability(rule));
}

void write_matching_csv(std::ostream& out, const Matching& matching, const PointConfiguration& config) {
    out << "family_id,type_index";
    for (std::size_t i = 0; i < config.dim(); ++i) out << ",x" << (i + 1);
    out << ",colour\n";
    out.precision(17);
    auto row = [&](long id, long type, std::size_t p) {
        out << id << "," << type;
        for (double c : config.position(p)) out << "," << c;
        out << "," << (config.colour(p) + 1) << "\n";
    };
    for (std::size_t f = 0; f < matching.families.size(); ++f)
        for (auto p : matching.families[f].points)
            row(static_cast<long>(f), static_cast<long>(matching.families[f].type_index), p);
    for (auto p : matching.unmatched) row(-1, -1, p);
}

}  // namespace pmatch
