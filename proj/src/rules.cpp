#include "pmatch/rules.hpp"

#include "pmatch/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pmatch {

int FamilyType::size() const noexcept { return std::accumulate(counts.begin(), counts.end(), 0); }

Rational MatchingRule::total_intensity() const {
    Rational total = 0;
    for (const auto& l : lambda_) total += l;
    return total;
}

std::vector<double> MatchingRule::lambda_double() const {
    std::vector<double> out;
    out.reserve(lambda_.size());
    for (const auto& l : lambda_) out.push_back(to_double(l));
    return out;
}

MatchingRule MatchingRule::with_lambda(const RationalVector& lambda) const {
    std::vector<std::vector<int>> rows;
    rows.reserve(types_.size());
    for (const auto& t : types_) rows.push_back(t.counts);
    return validate_rule(q_, rows, lambda);
}

MatchingRule validate_rule(std::size_t q, const std::vector<std::vector<int>>& types,
                           const RationalVector& lambda) {
    if (q == 0) fail(Errc::DimensionMismatch, "colour count must be positive");
    if (types.empty()) fail(Errc::DimensionMismatch, "at least one family type is required");
    if (lambda.size() != q)
        fail(Errc::DimensionMismatch, "intensity vector has length " + std::to_string(lambda.size()) +
                                          ", expected " + std::to_string(q));
    MatchingRule rule;
    rule.q_ = q;
    for (std::size_t j = 0; j < types.size(); ++j) {
        const auto& row = types[j];
        if (row.size() != q)
            fail(Errc::DimensionMismatch, "family type " + std::to_string(j) + " has length " +
                                              std::to_string(row.size()) + ", expected " + std::to_string(q));
        if (std::any_of(row.begin(), row.end(), [](int c) { return c < 0; }))
            fail(Errc::ParseError, "family type " + std::to_string(j) + " has a negative entry");
        if (std::all_of(row.begin(), row.end(), [](int c) { return c == 0; }))
            fail(Errc::ZeroFamilyType, "family type " + std::to_string(j) + " is the zero vector");
        FamilyType t{row};
        if (std::find(rule.types_.begin(), rule.types_.end(), t) == rule.types_.end())
            rule.types_.push_back(std::move(t));
    }
    bool every_unit = true;
    for (std::size_t i = 0; i < q && every_unit; ++i) {
        FamilyType unit{std::vector<int>(q, 0)};
        unit.counts[i] = 1;
        every_unit = std::find(rule.types_.begin(), rule.types_.end(), unit) != rule.types_.end();
    }
    if (every_unit) fail(Errc::AllUnitVectors, "every unit vector is an allowed type; singletons match everything");
    for (std::size_t i = 0; i < q; ++i)
        if (lambda[i] <= 0)
            fail(Errc::NonPositiveIntensity, "intensity of colour " + std::to_string(i) + " is " +
                                                 format_rational(lambda[i]));
    rule.lambda_ = lambda;
    return rule;
}

MatchingRule make_rule(const std::vector<std::vector<int>>& types, const std::vector<long>& lambda) {
    RationalVector l;
    for (long x : lambda) l.emplace_back(x);
    const std::size_t q = types.empty() ? lambda.size() : types.front().size();
    return validate_rule(q, types, l);
}

PairGraph::PairGraph(std::size_t q) : q_(q), adj_(q * q, false) {}

PairGraph::PairGraph(std::size_t q, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : PairGraph(q) {
    for (auto [i, j] : edges) add_edge(i, j);
}

void PairGraph::add_edge(std::size_t i, std::size_t j) {
    if (i >= q_ || j >= q_) fail(Errc::DimensionMismatch, "edge endpoint out of range");
    adj_[i * q_ + j] = true;
    adj_[j * q_ + i] = true;
}

std::size_t PairGraph::edge_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < q_; ++i)
        for (std::size_t j = i; j < q_; ++j) n += adjacent(i, j) ? 1 : 0;
    return n;
}

std::vector<FamilyType> pair_rule_to_V(const PairGraph& graph) {
    std::vector<FamilyType> out;
    for (std::size_t i = 0; i < graph.q(); ++i)
        for (std::size_t j = i; j < graph.q(); ++j)
            if (graph.adjacent(i, j)) {
                FamilyType t{std::vector<int>(graph.q(), 0)};
                t.counts[i] += 1;
                t.counts[j] += 1;
                out.push_back(std::move(t));
            }
    if (out.empty()) fail(Errc::EmptyGraph, "pair graph has no edges");
    return out;
}

}  // namespace pmatch
