#pragma once

#include "pmatch/geometry.hpp"
#include "pmatch/pairs.hpp"
#include "pmatch/pointproc.hpp"
#include "pmatch/rules.hpp"
#include "pmatch/schemes.hpp"
#include "pmatch/stats.hpp"

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <string>

namespace pmatch {

using nlohmann::json;

/// Errors: ParseError on unreadable files or malformed JSON.
json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& value);

/// {"q": n, "V": [[...], ...], "lambda": ["p/q", ...]} ("types" is accepted for "V") or {"graph": {...}, "lambda": [...]}.
/// Intensities may be strings or JSON numbers; both are read exactly.
MatchingRule rule_from_json(const json& j);
json rule_to_json(const MatchingRule& rule);

/// {"q": n, "edges": [[i, j], ...]} with 1-based colours.
PairGraph graph_from_json(const json& j);
RationalVector lambda_from_json(const json& j);

json rational_vector_to_json(const RationalVector& v);

/// Regime predicted for a rule: classification and lattice data plus the tail
/// behaviour expected for general matchings and for 1-d factor matchings.
struct RegimeSummary {
    Classification classification;
    std::size_t q = 0;
    bool full_lattice = false;
    std::optional<std::int64_t> quotient_order;  // |Z^q / L| when finite
    std::string general_tail;
    std::string factor_tail;
};

RegimeSummary expected_regime(const MatchingRule& rule);
json regime_to_json(const MatchingRule& rule, const RegimeSummary& regime);
std::string regime_text(const RegimeSummary& regime);

json fit_to_json(const FitReport& fit);
json pairs_to_json(const SetReport& sets, const FractionalMatching& flow, const ConsistencyReport& check);

/// Reads the matching CSV back into a configuration and matching.
/// Errors: ParseError.
std::pair<PointConfiguration, Matching> read_matching_csv(std::istream& in);

}  // namespace pmatch
