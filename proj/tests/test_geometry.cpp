#include "helpers.hpp"

#include "pmatch/geometry.hpp"
#include "pmatch/lattice.hpp"

#include <algorithm>
#include <numeric>

using namespace pmatch;
using namespace testing;

namespace {

const std::vector<std::vector<int>> triangle{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};

Rational charge_of(const RationalVector& eta, const FamilyType& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < eta.size(); ++i) s += eta[i] * v[i];
    return s;
}

bool reproduces(const MatchingRule& r, const RationalVector& a) {
    for (std::size_t i = 0; i < r.q(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < r.k(); ++j) s += a[j] * r.type(j)[i];
        if (s != r.lambda()[i]) return false;
    }
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x >= 0; });
}

}  // namespace

TEST_CASE("cone_membership examples") {
    auto w = cone_membership(rule({{1, 1}}, {1, 1}));
    REQUIRE(w);
    CHECK(w->a == Rs({1}));
    CHECK_FALSE(cone_membership(rule(triangle, {3, 1, 1})));
    w = cone_membership(rule({{2, 0}, {1, 1}}, {2, 1}));
    REQUIRE(w);
    CHECK(w->a == RationalVector{R(1, 2), R(1)});
}

TEST_CASE("interior_margin examples") {
    CHECK(interior_margin(rule(triangle, {1, 1, 1})) == R(1, 2));
    CHECK(interior_margin(rule({{1, 1}}, {1, 1})) == 0);
    CHECK(interior_margin(rule({{2, 0}, {1, 1}}, {2, 1})) > 0);
    CHECK(error_code([] { interior_margin(rule(triangle, {3, 1, 1})); }) == Errc::NotInCone);
}

TEST_CASE("classify examples") {
    CHECK(classify(rule({{2}}, {1})).kind == ClassKind::Underconstrained);
    CHECK(classify(rule(triangle, {2, 1, 1})).kind == ClassKind::Critical);
    CHECK(classify(rule({{2, 0}, {1, 1}}, {1, 2})).kind == ClassKind::Unsatisfiable);
    CHECK(classify(rule({{2, 0}, {1, 1}}, {1, 1})).kind == ClassKind::Critical);
    CHECK(classify(rule({{2, 0}, {1, 1}}, {2, 1})).kind == ClassKind::Underconstrained);
    CHECK(classify(rule({{1, 1}}, {1, 2})).kind == ClassKind::Unsatisfiable);
    CHECK(classify(rule({{1, 1, 1}}, {1, 1, 1})).kind == ClassKind::Critical);
    CHECK(classify(rule({{2, 3}}, {4, 6})).kind == ClassKind::Critical);
    CHECK(classify(rule({{2, 3}}, {4, 5})).kind == ClassKind::Unsatisfiable);
    CHECK(classify(rule({{3}}, {5})).kind == ClassKind::Underconstrained);
}

TEST_CASE("separating_charge certificates") {
    for (const auto& r : {rule(triangle, {3, 1, 1}), rule({{1, 1}}, {2, 1}), rule({{2, 0}, {1, 1}}, {1, 2})}) {
        const auto eta = separating_charge(r);
        CHECK(dot(eta, r.lambda()) > 0);
        for (const auto& v : r.types()) CHECK(charge_of(eta, v) <= 0);
        for (const auto& e : eta) CHECK(abs(e) <= 1);
    }
    CHECK(error_code([] { separating_charge(rule(triangle, {1, 1, 1})); }) == Errc::InCone);
}

TEST_CASE("supporting_charge certificates") {
    for (const auto& r : {rule({{1, 1}}, {1, 1}), rule(triangle, {2, 1, 1}), rule({{1, 1, 1}}, {1, 1, 1})}) {
        const auto eta = supporting_charge(r);
        CHECK(dot(eta, r.lambda()) == 0);
        CHECK(std::any_of(eta.begin(), eta.end(), [](const Rational& x) { return x != 0; }));
        for (const auto& v : r.types()) CHECK(charge_of(eta, v) <= 0);
    }
    // the triangle charge is unique up to scale
    const auto eta = supporting_charge(rule(triangle, {2, 1, 1}));
    CHECK(eta[1] == -eta[0]);
    CHECK(eta[2] == -eta[0]);
    CHECK(error_code([] { supporting_charge(rule(triangle, {1, 1, 1})); }) == Errc::NotOnBoundary);
    CHECK(error_code([] { supporting_charge(rule(triangle, {3, 1, 1})); }) == Errc::NotOnBoundary);
}

TEST_CASE("cone_decomposition matches membership") {
    const auto r = rule(triangle, {2, 1, 1});
    const auto a = cone_decomposition(r).a;
    CHECK(reproduces(r, a));
    CHECK(error_code([] { cone_decomposition(rule(triangle, {3, 1, 1})); }) == Errc::NotInCone);
}

TEST_CASE("certificates re-verify, and classification is scale and permutation invariant") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> lam(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        const auto base = random_small_rule(rng);
        RationalVector lambda(base.q());
        for (auto& l : lambda) l = Rational(lam(rng)) / lam(rng);
        const auto r = base.with_lambda(lambda);
        const auto c = classify(r);
        CHECK(verify_certificate(r, c));
        if (c.witness) CHECK(reproduces(r, c.witness->a));

        RationalVector scaled = lambda;
        for (auto& l : scaled) l *= R(7, 3);
        CHECK(classify(r.with_lambda(scaled)).kind == c.kind);

        std::vector<std::size_t> perm(r.q());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::vector<int>> rows;
        for (const auto& t : r.types()) {
            std::vector<int> row(r.q());
            for (std::size_t i = 0; i < r.q(); ++i) row[perm[i]] = t[i];
            rows.push_back(row);
        }
        RationalVector plam(r.q());
        for (std::size_t i = 0; i < r.q(); ++i) plam[perm[i]] = lambda[i];
        CHECK(classify(validate_rule(r.q(), rows, plam)).kind == c.kind);
    }
}

TEST_CASE("rank-deficient cones have no interior") {
    const auto r = rule({{1, 1}, {2, 2}}, {3, 3});
    const auto c = classify(r);
    CHECK(c.kind == ClassKind::Critical);
    CHECK(c.margin == 0);
    CHECK(c.rank == 1);
}
