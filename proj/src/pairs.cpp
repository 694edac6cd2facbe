#include "pmatch/pairs.hpp"

#include "pmatch/error.hpp"

#include <queue>

namespace pmatch {

std::string_view to_string(SetStatus status) {
    switch (status) {
        case SetStatus::Deficient: return "deficient";
        case SetStatus::Critical: return "critical";
        case SetStatus::Excessive: return "excessive";
        case SetStatus::Neutral: return "neutral";
    }
    return "unknown";
}

ClassKind SetReport::verdict() const {
    if (any_deficient) return ClassKind::Unsatisfiable;
    if (any_critical_no_deficient) return ClassKind::Critical;
    return ClassKind::Underconstrained;
}

std::uint32_t neighbourhood(std::uint32_t set, const PairGraph& graph) {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < graph.q(); ++i) {
        if (!(set >> i & 1u)) continue;
        for (std::size_t j = 0; j < graph.q(); ++j)
            if (graph.adjacent(i, j)) out |= 1u << j;
    }
    return out;
}

namespace {

void check_sizes(const RationalVector& lambda, const PairGraph& graph) {
    if (lambda.size() != graph.q()) fail(Errc::DimensionMismatch, "lambda length differs from the graph size");
    if (graph.q() > 20) fail(Errc::TooManyColours, "subset enumeration supports at most 20 colours");
}

Rational mass(std::uint32_t set, const RationalVector& lambda) {
    Rational m = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (set >> i & 1u) m += lambda[i];
    return m;
}

}  // namespace

SetReport classify_sets(const RationalVector& lambda, const PairGraph& graph) {
    check_sizes(lambda, graph);
    SetReport report;
    const std::uint32_t full = (1u << graph.q()) - 1;
    bool any_critical = false;
    report.sets.reserve(full);
    for (std::uint32_t s = 1; s <= full; ++s) {
        SetEntry e;
        e.set = s;
        e.neighbourhood = neighbourhood(s, graph);
        e.lambda_set = mass(s, lambda);
        e.lambda_neighbourhood = mass(e.neighbourhood, lambda);
        if (e.lambda_neighbourhood < e.lambda_set) e.status = SetStatus::Deficient;
        else if (e.neighbourhood == s) e.status = SetStatus::Neutral;
        else if (e.lambda_neighbourhood == e.lambda_set) e.status = SetStatus::Critical;
        else e.status = SetStatus::Excessive;
        report.any_deficient |= e.status == SetStatus::Deficient;
        any_critical |= e.status == SetStatus::Critical;
        report.sets.push_back(std::move(e));
    }
    report.any_critical_no_deficient = any_critical && !report.any_deficient;
    report.all_excessive_or_closed = !any_critical && !report.any_deficient;
    return report;
}

FractionalMatching max_fractional_matching(const RationalVector& lambda, const PairGraph& graph) {
    check_sizes(lambda, graph);
    const std::size_t q = graph.q();
    // nodes: 0 source, 1..q left copies s_i, q+1..2q right copies t_j, 2q+1 sink
    const std::size_t n = 2 * q + 2, source = 0, sink = 2 * q + 1;
    Rational total = 0;
    for (const auto& l : lambda) total += l;
    const Rational unbounded = total + 1;
    std::vector<std::vector<Rational>> cap(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < q; ++i) {
        cap[source][1 + i] = lambda[i];
        cap[q + 1 + i][sink] = lambda[i];
        for (std::size_t j = 0; j < q; ++j)
            if (graph.adjacent(i, j)) cap[1 + i][q + 1 + j] = unbounded;
    }
    auto residual = cap;
    Rational flow = 0;
    for (;;) {
        std::vector<std::size_t> parent(n, n);
        parent[source] = source;
        std::queue<std::size_t> bfs;
        bfs.push(source);
        while (!bfs.empty() && parent[sink] == n) {
            const auto u = bfs.front();
            bfs.pop();
            for (std::size_t v = 0; v < n; ++v)
                if (parent[v] == n && residual[u][v] > 0) {
                    parent[v] = u;
                    bfs.push(v);
                }
        }
        if (parent[sink] == n) break;
        Rational push = unbounded;
        for (auto v = sink; v != source; v = parent[v]) push = std::min(push, residual[parent[v]][v]);
        for (auto v = sink; v != source; v = parent[v]) {
            residual[parent[v]][v] -= push;
            residual[v][parent[v]] += push;
        }
        flow += push;
    }

    FractionalMatching m;
    m.flow = flow;
    m.a.assign(q, std::vector<Rational>(q, 0));
    auto f = [&](std::size_t i, std::size_t j) { return cap[1 + i][q + 1 + j] - residual[1 + i][q + 1 + j]; };
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            if (!graph.adjacent(i, j)) continue;
            m.a[i][j] = i == j ? f(i, i) / 2 : (f(i, j) + f(j, i)) / 2;
        }
    return m;
}

Rational min_cut_by_subsets(const RationalVector& lambda, const PairGraph& graph) {
    check_sizes(lambda, graph);
    const Rational total = mass((1u << graph.q()) - 1, lambda);
    Rational best = total;
    for (std::uint32_t s = 1; s < (1u << graph.q()); ++s) {
        const Rational cut = total - mass(s, lambda) + mass(neighbourhood(s, graph), lambda);
        if (cut < best) best = cut;
    }
    return best;
}

RationalVector covered_mass(const FractionalMatching& m) {
    const std::size_t q = m.a.size();
    RationalVector out(q, 0);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) out[i] += i == j ? 2 * m.a[i][i] : m.a[i][j];
    return out;
}

ConsistencyReport consistency_report(const RationalVector& lambda, const PairGraph& graph) {
    ConsistencyReport r;
    const auto sets = classify_sets(lambda, graph);
    const auto flow = max_fractional_matching(lambda, graph);
    r.set_verdict = sets.verdict();
    r.flow = flow.flow;
    r.min_cut = min_cut_by_subsets(lambda, graph);
    Rational total = 0;
    for (const auto& l : lambda) total += l;
    r.full_flow = flow.flow == total;

    std::vector<std::vector<int>> rows;
    for (const auto& t : pair_rule_to_V(graph)) rows.push_back(t.counts);
    r.geometry_verdict = classify(validate_rule(graph.q(), rows, lambda)).kind;

    if (r.flow != r.min_cut)
        r.issues.push_back("max-flow " + format_rational(r.flow) + " differs from min-cut " + format_rational(r.min_cut));
    if (r.full_flow == sets.any_deficient) r.issues.push_back("full flow disagrees with the deficient-set scan");
    if (r.full_flow && covered_mass(flow) != lambda) r.issues.push_back("flow matrix does not reproduce lambda");
    if (r.set_verdict != r.geometry_verdict)
        r.issues.push_back("set verdict " + std::string(to_string(r.set_verdict)) + " but cone verdict " +
                           std::string(to_string(r.geometry_verdict)));
    return r;
}

ConsistencyReport consistency_check(const RationalVector& lambda, const PairGraph& graph) {
    auto r = consistency_report(lambda, graph);
    if (!r.consistent()) fail(Errc::InconsistencyDetected, r.issues.front());
    return r;
}

}  // namespace pmatch
