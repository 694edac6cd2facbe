#include "pmatch/io.hpp"

#include "pmatch/error.hpp"
#include "pmatch/lattice.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace pmatch {

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::ParseError, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(Errc::ParseError, path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& value) {
    std::ofstream out(path);
    if (!out) fail(Errc::ParseError, "cannot write " + path.string());
    out << value.dump(2) << "\n";
}

namespace {

Rational rational_from_json(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number()) return parse_rational(v.dump());
    fail(Errc::ParseError, "expected a rational string or number, got " + v.dump());
}

}  // namespace

RationalVector lambda_from_json(const json& j) {
    if (!j.is_array()) fail(Errc::ParseError, "lambda must be an array");
    RationalVector out;
    for (const auto& v : j) out.push_back(rational_from_json(v));
    return out;
}

PairGraph graph_from_json(const json& j) {
    try {
        const auto q = j.at("q").get<std::size_t>();
        PairGraph g(q);
        for (const auto& e : j.at("edges")) {
            const auto a = e.at(0).get<long>();
            const auto b = e.at(1).get<long>();
            if (a < 1 || b < 1 || static_cast<std::size_t>(a) > q || static_cast<std::size_t>(b) > q)
                fail(Errc::ParseError, "edge endpoint outside 1..q: " + e.dump());
            g.add_edge(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
        }
        return g;
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("bad graph: ") + e.what());
    }
}

MatchingRule rule_from_json(const json& j) {
    try {
        const auto lambda = lambda_from_json(j.at("lambda"));
        if (j.contains("graph")) {
            const auto g = graph_from_json(j.at("graph"));
            std::vector<std::vector<int>> rows;
            for (const auto& t : pair_rule_to_V(g)) rows.push_back(t.counts);
            return validate_rule(g.q(), rows, lambda);
        }
        const auto& v = j.contains("V") ? j.at("V") : j.at("types");
        const auto rows = v.get<std::vector<std::vector<int>>>();
        const std::size_t q = j.contains("q") ? j.at("q").get<std::size_t>() : (rows.empty() ? 0 : rows[0].size());
        return validate_rule(q, rows, lambda);
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("bad rule: ") + e.what());
    }
}

json rational_vector_to_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(format_rational(x));
    return out;
}

json rule_to_json(const MatchingRule& rule) {
    json types = json::array();
    for (const auto& t : rule.types()) types.push_back(t.counts);
    return {{"q", rule.q()}, {"V", types}, {"lambda", rational_vector_to_json(rule.lambda())}};
}

RegimeSummary expected_regime(const MatchingRule& rule) {
    RegimeSummary r;
    r.q = rule.q();
    r.classification = classify(rule);
    r.full_lattice = is_full_lattice(rule);
    if (lattice_rank(rule) == rule.q()) r.quotient_order = quotient_group(rule).order();
    switch (r.classification.kind) {
        case ClassKind::Unsatisfiable:
            r.general_tail = "impossible";
            r.factor_tail = "impossible";
            break;
        case ClassKind::Critical:
            r.general_tail = "exponent d/2 (d<=2); Exp (d>=3)";
            r.factor_tail = "exponent 1/2";
            break;
        case ClassKind::Underconstrained:
            r.general_tail = "Exp";
            r.factor_tail = r.full_lattice ? "Exp" : "exponent 1";
            break;
    }
    return r;
}

json regime_to_json(const MatchingRule& rule, const RegimeSummary& regime) {
    const auto& c = regime.classification;
    json j = {{"rule", rule_to_json(rule)},
              {"classification", std::string(to_string(c.kind))},
              {"rank", c.rank},
              {"margin", format_rational(c.margin)},
              {"full_lattice", regime.full_lattice},
              {"general_tail", regime.general_tail},
              {"factor_tail_d1", regime.factor_tail}};
    j["quotient_order"] = regime.quotient_order ? json(*regime.quotient_order) : json(nullptr);
    if (c.charge) j[c.kind == ClassKind::Unsatisfiable ? "separating_charge" : "supporting_charge"] =
        rational_vector_to_json(*c.charge);
    if (c.witness) j["cone_witness"] = rational_vector_to_json(c.witness->a);
    return j;
}

std::string regime_text(const RegimeSummary& regime) {
    std::ostringstream out;
    out << to_string(regime.classification.kind) << "; L" << (regime.full_lattice ? "=" : "!=") << "Z^" << regime.q;
    if (regime.quotient_order) out << " (|Gamma|=" << *regime.quotient_order << ")";
    out << "; expected tail " << regime.general_tail << "; factor tail (d=1) " << regime.factor_tail;
    return out.str();
}

json fit_to_json(const FitReport& fit) {
    return {{"model", std::string(to_string(fit.model))},
            {"parameter", fit.parameter},
            {"r_min", fit.r_min},
            {"r_max", fit.r_max},
            {"r2", fit.r2},
            {"stderr", fit.stderr_},
            {"n_grid", fit.n_grid},
            {"n_points", fit.n_points}};
}

json pairs_to_json(const SetReport& sets, const FractionalMatching& flow, const ConsistencyReport& check) {
    auto members = [](std::uint32_t mask) {
        json out = json::array();
        for (int i = 0; i < 32; ++i)
            if (mask >> i & 1u) out.push_back(i + 1);
        return out;
    };
    json entries = json::array();
    for (const auto& e : sets.sets)
        entries.push_back({{"S", members(e.set)},
                           {"N", members(e.neighbourhood)},
                           {"lambda_S", format_rational(e.lambda_set)},
                           {"lambda_N", format_rational(e.lambda_neighbourhood)},
                           {"status", std::string(to_string(e.status))}});
    json a = json::array();
    for (const auto& row : flow.a) {
        json r = json::array();
        for (const auto& v : row) r.push_back(format_rational(v));
        a.push_back(r);
    }
    return {{"sets", entries},
            {"any_deficient", sets.any_deficient},
            {"any_critical_no_deficient", sets.any_critical_no_deficient},
            {"all_excessive_or_closed", sets.all_excessive_or_closed},
            {"set_verdict", std::string(to_string(check.set_verdict))},
            {"cone_verdict", std::string(to_string(check.geometry_verdict))},
            {"flow", format_rational(flow.flow)},
            {"min_cut", format_rational(check.min_cut)},
            {"a", a},
            {"consistent", check.consistent()},
            {"issues", check.issues}};
}

std::pair<PointConfiguration, Matching> read_matching_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail(Errc::ParseError, "empty matching CSV");
    std::vector<std::string> header;
    {
        std::stringstream h(line);
        std::string cell;
        while (std::getline(h, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 4 || header[0] != "family_id" || header[1] != "type_index" || header.back() != "colour")
        fail(Errc::ParseError, "unexpected matching CSV header: " + line);
    const std::size_t d = header.size() - 3;

    struct Row {
        long family, type;
        std::vector<double> x;
        int colour;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream r(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(r, cell, ',')) cells.push_back(cell);
        if (cells.size() != header.size()) fail(Errc::ParseError, "bad matching CSV row: " + line);
        try {
            Row row{std::stol(cells[0]), std::stol(cells[1]), {}, std::stoi(cells.back()) - 1};
            for (std::size_t i = 0; i < d; ++i) row.x.push_back(std::stod(cells[2 + i]));
            rows.push_back(std::move(row));
        } catch (const std::exception&) {
            fail(Errc::ParseError, "bad matching CSV row: " + line);
        }
    }
    Window w;
    w.lo.assign(d, std::numeric_limits<double>::infinity());
    w.hi.assign(d, -std::numeric_limits<double>::infinity());
    for (const auto& r : rows)
        for (std::size_t i = 0; i < d; ++i) {
            w.lo[i] = std::min(w.lo[i], r.x[i]);
            w.hi[i] = std::max(w.hi[i], r.x[i]);
        }
    if (rows.empty()) w = Window{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};

    // keep points in position order so 1-d schemes can reuse the configuration
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a].x < rows[b].x; });
    PointConfiguration config(w);
    Matching matching;
    std::map<long, std::size_t> family_slot;
    for (auto idx : order) {
        const auto& r = rows[idx];
        const std::size_t p = config.size();
        config.add(r.x, r.colour);
        if (r.family < 0) {
            matching.unmatched.push_back(p);
            continue;
        }
        auto [it, fresh] = family_slot.emplace(r.family, matching.families.size());
        if (fresh) matching.families.push_back(Family{{}, static_cast<std::size_t>(r.type)});
        matching.families[it->second].points.push_back(p);
    }
    return {std::move(config), std::move(matching)};
}

}  // namespace pmatch
