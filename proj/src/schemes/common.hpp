#pragma once

#include "pmatch/geometry.hpp"
#include "pmatch/schemes.hpp"

namespace pmatch::detail {

void require_underconstrained(const MatchingRule& rule, std::string_view scheme);
void require_one_dimensional(const PointConfiguration& config, std::string_view scheme);

/// Accumulates one block's points and colour counts.
struct BlockBuffer {
    explicit BlockBuffer(std::size_t q) : counts(q, 0) {}
    std::vector<std::size_t> points;
    std::vector<int> counts;

    void add(std::size_t point, int colour) {
        points.push_back(point);
        ++counts[static_cast<std::size_t>(colour)];
    }
    void reset() {
        points.clear();
        std::fill(counts.begin(), counts.end(), 0);
    }
};

/// Emit the families of a closed block into `out` and reset the buffer.
void close_block(BlockBuffer& block, const PointConfiguration& config, const Matchability& matchability,
                 Matching& out);

}  // namespace pmatch::detail
