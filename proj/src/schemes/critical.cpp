#include "common.hpp"

#include "pmatch/error.hpp"

#include <algorithm>
#include <iterator>

namespace pmatch {

namespace {

struct Slot {
    std::size_t type;
    std::size_t index;  // position among the type's slots; 0 is the anchor
};

/// Thinning thresholds: colour-i points go to slot m when U < threshold[m] (53-bit U),
/// with slot masses a_j / lambda_i rounded up exactly on the 2^-53 grid.
struct ColourSplit {
    std::vector<Slot> slots;
    std::vector<std::uint64_t> thresholds;
};

std::vector<ColourSplit> build_splits(const MatchingRule& rule, const RationalVector& a) {
    const BigInt scale = BigInt(1) << 53;
    std::vector<ColourSplit> splits(rule.q());
    for (std::size_t i = 0; i < rule.q(); ++i) {
        Rational cumulative = 0;
        for (std::size_t j = 0; j < rule.k(); ++j) {
            if (a[j] <= 0) continue;
            std::size_t offset = 0;
            for (std::size_t c = 0; c < i; ++c) offset += static_cast<std::size_t>(rule.type(j)[c]);
            for (int copy = 0; copy < rule.type(j)[i]; ++copy) {
                cumulative += a[j] / rule.lambda()[i];
                const Rational scaled = cumulative * Rational(scale);
                BigInt t = numerator(scaled) / denominator(scaled);
                if (t * denominator(scaled) < numerator(scaled)) ++t;
                splits[i].slots.push_back(Slot{j, offset + static_cast<std::size_t>(copy)});
                splits[i].thresholds.push_back(static_cast<std::uint64_t>(t));
            }
        }
        if (cumulative != 1) fail(Errc::InconsistencyDetected, "cone decomposition does not reproduce lambda");
    }
    return splits;
}

}  // namespace

Matching critical_reduction_1d(const PointConfiguration& config, const MatchingRule& rule) {
    detail::require_one_dimensional(config, "critical_reduction");
    const auto c = classify(rule);
    if (c.kind != ClassKind::Critical)
        fail(Errc::WrongClassification,
             "critical_reduction needs a critical rule, got " + std::string(to_string(c.kind)));
    const auto a = cone_decomposition(rule).a;
    const auto splits = build_splits(rule, a);

    Matching out;
    if (config.empty()) return out;
    const auto discrete = discretize(config);

    // streams[j][m]: points of type-j slot m, in position order
    std::vector<std::vector<std::vector<std::size_t>>> streams(rule.k());
    for (std::size_t j = 0; j < rule.k(); ++j) streams[j].resize(static_cast<std::size_t>(rule.type(j).size()));
    for (const auto& site : discrete.sites) {
        const auto& split = splits[static_cast<std::size_t>(site.colour)];
        const std::uint64_t u = MarkStreams(site.u).uniform53(0);
        const auto it = std::upper_bound(split.thresholds.begin(), split.thresholds.end(), u);
        const auto& slot = split.slots[static_cast<std::size_t>(it - split.thresholds.begin())];
        streams[slot.type][slot.index].push_back(site.point);
    }

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    for (std::size_t j = 0; j < rule.k(); ++j) {
        const auto& anchors = streams[j][0];
        const std::size_t width = streams[j].size();
        // partners[anchor position][m - 1]
        std::vector<std::vector<std::size_t>> partners(anchors.size(), std::vector<std::size_t>(width - 1, none));
        for (std::size_t m = 1; m < width; ++m) {
            const auto& other = streams[j][m];
            std::vector<std::size_t> ids;
            std::vector<bool> red;
            ids.reserve(anchors.size() + other.size());
            std::size_t x = 0, y = 0;
            // ids carry anchor slots as 2r and other-stream points as 2p + 1
            while (x < anchors.size() || y < other.size()) {
                if (y == other.size() || (x < anchors.size() && anchors[x] < other[y])) {
                    ids.push_back(2 * x++);
                    red.push_back(true);
                } else {
                    ids.push_back(2 * other[y++] + 1);
                    red.push_back(false);
                }
            }
            auto matched = stack_match(ids, red);
            for (auto [r, b] : matched.pairs) partners[r / 2][m - 1] = b / 2;
            for (auto id : matched.unmatched)
                if (id % 2 == 1) out.unmatched.push_back(id / 2);
        }
        for (std::size_t r = 0; r < anchors.size(); ++r) {
            const bool complete = std::find(partners[r].begin(), partners[r].end(), none) == partners[r].end();
            if (complete) {
                Family f{{anchors[r]}, j};
                f.points.insert(f.points.end(), partners[r].begin(), partners[r].end());
                out.families.push_back(std::move(f));
            } else {
                out.unmatched.push_back(anchors[r]);
                for (auto p : partners[r])
                    if (p != none) out.unmatched.push_back(p);
            }
        }
    }
    return out;
}

}  // namespace pmatch
