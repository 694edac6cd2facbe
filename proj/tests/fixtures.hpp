#pragma once

#include "pmatch/error.hpp"
#include "pmatch/rational.hpp"
#include "pmatch/rules.hpp"

#include <random>
#include <vector>

namespace testing {

inline pmatch::Rational R(long p, long q = 1) { return pmatch::Rational(p) / q; }

inline pmatch::RationalVector Rs(std::initializer_list<long> v) {
    pmatch::RationalVector out;
    for (auto x : v) out.emplace_back(x);
    return out;
}

inline pmatch::MatchingRule rule(const std::vector<std::vector<int>>& V, std::initializer_list<long> lambda) {
    return pmatch::validate_rule(V.front().size(), V, Rs(lambda));
}

inline pmatch::MatchingRule rule(const std::vector<std::vector<int>>& V, const pmatch::RationalVector& lambda) {
    return pmatch::validate_rule(V.front().size(), V, lambda);
}

/// Random rule with q <= 3 colours, k <= 4 types and entries <= 4, as in the oracle tests.
inline pmatch::MatchingRule random_small_rule(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> qd(1, 3), kd(1, 4), ed(0, 4);
    for (;;) {
        const int q = qd(rng), k = kd(rng);
        std::vector<std::vector<int>> V(k, std::vector<int>(q));
        for (auto& v : V)
            for (auto& e : v) e = ed(rng);
        try {
            return pmatch::validate_rule(q, V, pmatch::RationalVector(q, 1));
        } catch (const pmatch::Error&) {
        }
    }
}

}  // namespace testing
