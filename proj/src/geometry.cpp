#include "pmatch/geometry.hpp"

#include "pmatch/error.hpp"
#include "pmatch/lattice.hpp"
#include "pmatch/simplex.hpp"

namespace pmatch {

std::string_view to_string(ClassKind kind) {
    switch (kind) {
    case ClassKind::Unsatisfiable: return "Unsatisfiable";
    case ClassKind::Critical: return "Critical";
    case ClassKind::Underconstrained: return "Underconstrained";
    }
    return "Unknown";
}

namespace {

RationalVector as_rational(const FamilyType& t) {
    RationalVector v;
    v.reserve(t.colours());
    for (int c : t.counts) v.emplace_back(c);
    return v;
}

// Charge LPs use y = eta + 1 in [0, 2]^q.
// Columns: y (q), box slacks (q), family slacks (k). Rows: box (q), families (k) [, lambda row].
LinearProgram charge_program(const MatchingRule& rule, bool lambda_row) {
    const std::size_t q = rule.q();
    const std::size_t k = rule.k();
    const std::size_t cols = 2 * q + k;
    LinearProgram lp;
    for (std::size_t i = 0; i < q; ++i) {
        RationalVector row(cols, Rational(0));
        row[i] = 1;
        row[q + i] = 1;
        lp.A.push_back(std::move(row));
        lp.b.emplace_back(2);
    }
    for (std::size_t j = 0; j < k; ++j) {
        RationalVector row(cols, Rational(0));
        for (std::size_t i = 0; i < q; ++i) row[i] = rule.type(j)[i];
        row[2 * q + j] = 1;
        lp.A.push_back(std::move(row));
        lp.b.emplace_back(rule.type(j).size());
    }
    if (lambda_row) {
        RationalVector row(cols, Rational(0));
        for (std::size_t i = 0; i < q; ++i) row[i] = rule.lambda()[i];
        lp.A.push_back(std::move(row));
        lp.b.push_back(rule.total_intensity());
    }
    lp.c.assign(cols, Rational(0));
    return lp;
}

RationalVector charge_from(const LpResult& r, std::size_t q) {
    RationalVector eta(q);
    for (std::size_t i = 0; i < q; ++i) eta[i] = r.x[i] - 1;
    return eta;
}

bool is_zero(const RationalVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

std::optional<ConeWitness> cone_membership(const std::vector<FamilyType>& types, const RationalVector& target) {
    const std::size_t k = types.size();
    const std::size_t q = target.size();
    LinearProgram lp;
    lp.A.assign(q, RationalVector(k, Rational(0)));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < q; ++i) lp.A[i][j] = types[j][i];
    lp.b = target;
    lp.c.assign(k, Rational(0));
    auto r = solve_lp(lp);
    if (r.status != LpStatus::Optimal) return std::nullopt;
    return ConeWitness{std::move(r.x)};
}

std::optional<ConeWitness> cone_membership(const MatchingRule& rule) {
    return cone_membership(rule.types(), rule.lambda());
}

std::pair<Rational, ConeWitness> margin_lp(const std::vector<FamilyType>& types, const RationalVector& target) {
    const std::size_t k = types.size();
    const std::size_t q = target.size();
    LinearProgram lp;
    lp.A.assign(q, RationalVector(k + 1, Rational(0)));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < q; ++i) {
            lp.A[i][j] = types[j][i];
            lp.A[i][k] += types[j][i];
        }
    lp.b = target;
    lp.c.assign(k + 1, Rational(0));
    lp.c[k] = 1;
    auto r = solve_lp(lp);
    if (r.status == LpStatus::Infeasible) fail(Errc::NotInCone, "target is outside cone(V)");
    if (r.status == LpStatus::Unbounded) fail(Errc::InconsistencyDetected, "unbounded margin LP");
    const Rational alpha = r.x[k];
    ConeWitness w;
    w.a.resize(k);
    for (std::size_t j = 0; j < k; ++j) w.a[j] = r.x[j] + alpha;
    return {alpha, std::move(w)};
}

Rational interior_margin(const MatchingRule& rule) {
    auto [alpha, witness] = margin_lp(rule.types(), rule.lambda());
    if (lattice_rank(rule) < rule.q()) return Rational(0);
    return alpha;
}

RationalVector separating_charge(const MatchingRule& rule) {
    auto lp = charge_program(rule, false);
    for (std::size_t i = 0; i < rule.q(); ++i) lp.c[i] = rule.lambda()[i];
    const auto r = solve_lp(lp);
    if (r.status != LpStatus::Optimal) fail(Errc::InconsistencyDetected, "separating-charge LP not solved");
    RationalVector eta = charge_from(r, rule.q());
    if (dot(eta, rule.lambda()) <= 0) fail(Errc::InCone, "lambda lies in cone(V); no separating charge exists");
    return eta;
}

RationalVector supporting_charge(const MatchingRule& rule) {
    if (!cone_membership(rule)) fail(Errc::NotOnBoundary, "lambda lies outside cone(V)");
    auto lp = charge_program(rule, true);
    // First try to make the families as negatively charged as possible.
    for (std::size_t i = 0; i < rule.q(); ++i)
        for (const auto& t : rule.types()) lp.c[i] -= t[i];
    auto r = solve_lp(lp);
    if (r.status == LpStatus::Optimal) {
        auto eta = charge_from(r, rule.q());
        if (!is_zero(eta)) return eta;
    }
    // Every family is charge-neutral for any solution: V spans a proper subspace.
    for (std::size_t i = 0; i < rule.q(); ++i)
        for (int sign : {1, -1}) {
            std::fill(lp.c.begin(), lp.c.end(), Rational(0));
            lp.c[i] = sign;
            r = solve_lp(lp);
            if (r.status != LpStatus::Optimal) continue;
            auto eta = charge_from(r, rule.q());
            if (!is_zero(eta)) return eta;
        }
    fail(Errc::NotOnBoundary, "lambda lies in the interior of cone(V)");
}

ConeWitness cone_decomposition(const MatchingRule& rule) {
    auto w = cone_membership(rule);
    if (!w) fail(Errc::NotInCone, "lambda lies outside cone(V)");
    return *std::move(w);
}

Classification classify(const MatchingRule& rule) {
    Classification c;
    c.rank = lattice_rank(rule);
    if (!cone_membership(rule)) {
        c.kind = ClassKind::Unsatisfiable;
        c.charge = separating_charge(rule);
        return c;
    }
    auto [alpha, witness] = margin_lp(rule.types(), rule.lambda());
    if (c.rank < rule.q()) alpha = 0;
    c.margin = alpha;
    c.witness = std::move(witness);
    if (alpha > 0) {
        c.kind = ClassKind::Underconstrained;
    } else {
        c.kind = ClassKind::Critical;
        c.charge = supporting_charge(rule);
    }
    return c;
}

bool verify_certificate(const MatchingRule& rule, const Classification& c) {
    auto charge_ok = [&](bool strict) {
        if (!c.charge || c.charge->size() != rule.q() || is_zero(*c.charge)) return false;
        const Rational on_lambda = dot(*c.charge, rule.lambda());
        if (strict ? on_lambda <= 0 : on_lambda != 0) return false;
        for (const auto& t : rule.types())
            if (dot(*c.charge, as_rational(t)) > 0) return false;
        return true;
    };
    auto witness_ok = [&](const Rational& floor) {
        if (!c.witness || c.witness->a.size() != rule.k()) return false;
        RationalVector sum(rule.q(), Rational(0));
        for (std::size_t j = 0; j < rule.k(); ++j) {
            if (c.witness->a[j] < floor || c.witness->a[j] < 0) return false;
            for (std::size_t i = 0; i < rule.q(); ++i) sum[i] += c.witness->a[j] * rule.type(j)[i];
        }
        return sum == rule.lambda();
    };
    switch (c.kind) {
    case ClassKind::Unsatisfiable: return charge_ok(true);
    case ClassKind::Critical: return charge_ok(false) && witness_ok(Rational(0));
    case ClassKind::Underconstrained: return c.margin > 0 && witness_ok(c.margin);
    }
    return false;
}

}  // namespace pmatch
