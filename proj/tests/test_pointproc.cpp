#include "helpers.hpp"

#include "pmatch/pointproc.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <sstream>

using namespace pmatch;
using namespace testing;

namespace {

PointConfiguration line(std::initializer_list<std::pair<double, int>> pts, double lo, double hi) {
    PointConfiguration c(Window::interval(lo, hi));
    for (auto [x, col] : pts) c.add(x, col);
    return c;
}

}  // namespace

TEST_CASE("sample_poisson_1d is deterministic and stays in the window") {
    const auto r = rule({{1, 1}}, {1, 1});
    const auto a = sample_poisson_1d(r, 10, 5, 42);
    const auto b = sample_poisson_1d(r, 10, 5, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.x(i) == b.x(i));
        CHECK(a.colour(i) == b.colour(i));
        CHECK(a.x(i) >= -15.0);
        CHECK(a.x(i) <= 15.0);
        if (i > 0) CHECK(a.x(i) > a.x(i - 1));
    }
    const auto c = sample_poisson_1d(r, 10, 5, 43);
    CHECK((c.size() != a.size() || c.x(0) != a.x(0)));
}

TEST_CASE("sample_poisson_1d counts and colour frequencies") {
    const auto r = rule({{2, 0}, {1, 1}}, {2, 1});
    const double len = 2 * (100.0 + 20.0);
    const double mean = 3.0 * len;
    double total = 0.0, red = 0.0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        const auto c = sample_poisson_1d(r, 100, 20, replica_seed(7, s));
        const double n = static_cast<double>(c.size());
        CHECK(std::abs(n - mean) < 5 * std::sqrt(mean));
        total += n;
        for (std::size_t i = 0; i < c.size(); ++i) red += c.colour(i) == 0;
    }
    CHECK(std::abs(total / seeds - mean) < 5 * std::sqrt(mean / seeds));
    const double p = 2.0 / 3.0;
    CHECK(std::abs(red / total - p) < 5 * std::sqrt(p * (1 - p) / total));
}

TEST_CASE("sample_poisson_box") {
    const auto r = rule({{1, 1}}, {1, 1});
    const Window box = Window::cube(2, 0.0, 20.0);
    const auto a = sample_poisson_box(r, box, 3);
    const auto b = sample_poisson_box(r, box, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.position(i)[0] == b.position(i)[0]);
        CHECK(a.position(i)[1] == b.position(i)[1]);
        CHECK(box.contains(a.position(i)));
    }
    double total = 0;
    for (int s = 0; s < 100; ++s) total += static_cast<double>(sample_poisson_box(r, box, replica_seed(9, s)).size());
    CHECK(std::abs(total / 100 - 800.0) < 5 * std::sqrt(800.0 / 100));
    CHECK(sample_poisson_box(r, Window::cube(2, 1.0, 1.0), 1).empty());
}

TEST_CASE("replica seeds do not depend on the number of seeds") {
    CHECK(replica_seed(5, 3) == replica_seed(5, 3));
    CHECK(replica_seed(5, 3) != replica_seed(5, 4));
    CHECK(replica_seed(5, 3) != replica_seed(6, 3));
}

TEST_CASE("discretize gap-ceiling example") {
    // first point at the window edge is 0 gap; gaps (0.3, 1.7, 2.0) follow
    const auto c = line({{0.0, 0}, {0.3, 0}, {2.0, 0}, {4.0, 0}}, 0.0, 5.0);
    const auto d = discretize(c);
    REQUIRE(d.size() == 4);
    CHECK(d.sites[0].index == 0);
    CHECK(d.sites[1].index == 1);
    CHECK(d.sites[2].index == 3);
    CHECK(d.sites[3].index == 5);
    CHECK(d.sites[1].u == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(d.sites[2].u == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(d.sites[3].u == 0.0);
    CHECK(d.origin_offset == 0.0);
}

TEST_CASE("discretize edge cases") {
    const auto one = discretize(line({{2.5, 1}}, 0.0, 5.0));
    REQUIRE(one.size() == 1);
    CHECK(one.sites[0].index == 0);
    CHECK(one.sites[0].colour == 1);
    CHECK(error_code([] { discretize(PointConfiguration(Window::interval(0, 1))); }) == Errc::EmptyConfiguration);
}

TEST_CASE("discretized occupancy is 1 - 1/e") {
    const auto r = rule({{2}}, {1});
    const auto c = sample_poisson_1d(r, 5e5, 1, 99);
    const auto d = discretize(c);
    const double span = static_cast<double>(d.sites.back().index - d.sites.front().index + 1);
    CHECK(span > 1e6);
    CHECK(std::abs(static_cast<double>(d.size()) / span - (1.0 - std::exp(-1.0))) < 0.01);
    for (std::size_t n = 1; n < d.size(); ++n) CHECK(d.sites[n].index > d.sites[n - 1].index);
    CHECK(d.size() == c.size());
}

TEST_CASE("marks: G is geometric, coins are fair and independent of colour") {
    const auto r = rule({{1, 1}}, {1, 1});
    const auto c = sample_poisson_1d(r, 5e5, 1, 1234);
    const auto d = discretize(c, 2.0);
    const double n = static_cast<double>(d.size());
    REQUIRE(n > 1.9e6);
    std::vector<double> g(12, 0.0);
    double eps = 0.0;
    // contingency table colour x (G == 1, eps1, zeta1)
    double table[2][8] = {};
    for (const auto& s : d.sites) {
        const auto m = derive_marks(s);
        if (m.G() < 12) g[static_cast<std::size_t>(m.G())] += 1;
        eps += m.epsilon(1);
        const int cell = (m.G() == 1) + 2 * m.epsilon(1) + 4 * m.zeta(1);
        table[s.colour][cell] += 1;
    }
    for (int s = 1; s <= 10; ++s) {
        const double p = std::ldexp(1.0, -s);
        CHECK(std::abs(g[s] / n - p) < 3 * std::sqrt(p * (1 - p) / n));
    }
    CHECK(std::abs(eps / n - 0.5) < 3 * std::sqrt(0.25 / n));

    double row[2] = {}, col[8] = {};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 8; ++b) {
            row[a] += table[a][b];
            col[b] += table[a][b];
        }
    double chi2 = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 8; ++b) {
            const double e = row[a] * col[b] / n;
            chi2 += (table[a][b] - e) * (table[a][b] - e) / e;
        }
    const boost::math::chi_squared dist(7);
    CHECK(chi2 < boost::math::quantile(dist, 0.99));
}

TEST_CASE("marks are a pure function of u") {
    Site s;
    s.u = 0.123456789;
    const auto a = derive_marks(s), b = derive_marks(s);
    CHECK(a.G() == b.G());
    for (int st = 1; st < 10; ++st) {
        CHECK(a.epsilon(st) == b.epsilon(st));
        CHECK(a.zeta(st) == b.zeta(st));
    }
}

TEST_CASE("epsilon_log2") {
    const auto c = line({{0.0, 0}, {1.0, 0}, {1.5, 0}}, 0.0, 2.0);
    const auto e = epsilon_log2(discretize(c));
    REQUIRE(e.size() == 3);
    CHECK(e[1]);
    CHECK_FALSE(e[2]);

    const auto r = rule({{2}}, {1});
    const auto big = discretize(sample_poisson_1d(r, 2e5, 1, 5));
    const auto bits = epsilon_log2(big);
    double ones = 0;
    for (bool b : bits) ones += b;
    const double n = static_cast<double>(bits.size());
    CHECK(std::abs(ones / n - 0.5) < 3 * std::sqrt(0.25 / n));
}

TEST_CASE("discretization commutes with translation by whole units") {
    // dyadic positions keep the shifted coordinates exact
    const auto r = rule({{2}, {3}}, {1});
    auto c = sample_poisson_1d(r, 200, 10, 77);
    PointConfiguration dy(Window::interval(-210, 210));
    for (std::size_t i = 0; i < c.size(); ++i) dy.add(std::ldexp(std::round(std::ldexp(c.x(i), 20)), -20), 0);
    const auto shifted = dy.translated(17.0);
    const auto a = discretize(dy), b = discretize(shifted);
    REQUIRE(a.size() == b.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        CHECK(a.sites[n].index == b.sites[n].index);
        CHECK(a.sites[n].u == b.sites[n].u);
        CHECK(derive_marks(a.sites[n]).G() == derive_marks(b.sites[n]).G());
    }
    CHECK(b.origin_offset == a.origin_offset + 17.0);
}

TEST_CASE("point CSV") {
    std::ostringstream out;
    write_points_csv(out, line({{0.5, 0}, {1.25, 1}}, 0, 2));
    CHECK(out.str() == "x1,colour\n0.5,1\n1.25,2\n");
}
