// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
// Usage: acceptance [criterion numbers...]  (default: all)

#include "fixtures.hpp"
#include "oracles.hpp"

#include "pmatch/error.hpp"
#include "pmatch/experiment.hpp"
#include "pmatch/geometry.hpp"
#include "pmatch/io.hpp"
#include "pmatch/lattice.hpp"
#include "pmatch/pairs.hpp"
#include "pmatch/spacefill.hpp"
#include "pmatch/stats.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace pmatch;
using namespace testing;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

std::vector<MatchingRule> oracle_rules() {
    std::mt19937_64 rng(20240601);
    std::vector<MatchingRule> rules;
    for (int i = 0; i < 20; ++i) rules.push_back(random_small_rule(rng));
    return rules;
}

ExperimentConfig base_config(const MatchingRule& rule, SchemeKind scheme, double B, std::uint64_t seeds) {
    ExperimentConfig c;
    c.rule = rule;
    c.rule_json = rule_to_json(rule);
    c.scheme = scheme;
    c.window = B;
    c.seed_count = seeds;
    c.base_seed = 1;
    c.threads = 0;
    c.plots = false;
    return c;
}

// 1. Classification verdicts of the worked examples, exact.
void classification_table(Outcome& out) {
    struct Case {
        const char* name;
        MatchingRule rule;
        ClassKind kind;
        std::optional<bool> full_lattice;
        std::optional<std::int64_t> gamma;
    };
    const std::vector<Case> cases{
        {"one colour pairs", rule({{2}}, {1}), ClassKind::Underconstrained, false, 2},
        {"red-blue l1<l2", rule({{1, 1}}, {1, 2}), ClassKind::Unsatisfiable, {}, {}},
        {"red-blue l1=l2", rule({{1, 1}}, {1, 1}), ClassKind::Critical, {}, {}},
        {"red-blue l1>l2", rule({{1, 1}}, {3, 1}), ClassKind::Unsatisfiable, {}, {}},
        {"(2,0),(1,1) l1<l2", rule({{2, 0}, {1, 1}}, {1, 2}), ClassKind::Unsatisfiable, {}, {}},
        {"(2,0),(1,1) l1=l2", rule({{2, 0}, {1, 1}}, {1, 1}), ClassKind::Critical, false, 2},
        {"(2,0),(1,1) l1>l2", rule({{2, 0}, {1, 1}}, {2, 1}), ClassKind::Underconstrained, false, 2},
        {"triplets", rule({{1, 1, 1}}, {1, 1, 1}), ClassKind::Critical, {}, {}},
        {"single type multiple", rule({{1, 2}}, {2, 4}), ClassKind::Critical, {}, {}},
        {"single type off-ray", rule({{1, 2}}, {1, 1}), ClassKind::Unsatisfiable, {}, {}},
        {"single type one colour", rule({{3}}, {5}), ClassKind::Underconstrained, false, 3},
        {"triangle (1,1,1)", rule({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}, {1, 1, 1}), ClassKind::Underconstrained, false, 2},
        {"triangle (2,1,1)", rule({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}, {2, 1, 1}), ClassKind::Critical, {}, {}},
        {"triangle (3,1,1)", rule({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}, {3, 1, 1}), ClassKind::Unsatisfiable, {}, {}},
        {"(3,1),(3,3),(2,4)", rule({{3, 1}, {3, 3}, {2, 4}}, {3, 2}), ClassKind::Underconstrained, false, 2},
        {"twos and threes", rule({{2}, {3}}, {1}), ClassKind::Underconstrained, true, 1},
        {"partial red-blue", rule({{1, 1}, {1, 0}}, {2, 1}), ClassKind::Underconstrained, true, 1},
    };
    int ok = 0;
    for (const auto& c : cases) {
        const auto regime = expected_regime(c.rule);
        bool good = regime.classification.kind == c.kind && verify_certificate(c.rule, regime.classification);
        if (c.full_lattice) good = good && regime.full_lattice == *c.full_lattice;
        if (c.gamma) good = good && regime.quotient_order == c.gamma;
        out.require(good, c.name);
        ok += good;
    }
    const auto fig = expected_regime(rule({{3, 1}, {3, 3}, {2, 4}}, {3, 2}));
    out.require(regime_text(fig).find("L!=Z^2") != std::string::npos &&
                    fig.factor_tail == "exponent 1",
                "lattice flags of the (3,1),(3,3),(2,4) rule");
    out.detail << ok << "/" << cases.size() << " verdicts exact";
}

// 2. matchable() against brute force on {0..6}^q.
void matchability_oracle(Outcome& out) {
    std::size_t checked = 0, mismatches = 0;
    for (const auto& r : oracle_rules()) {
        const Matchability m(r);
        for_each_box_point(r.q(), 6, [&](const std::vector<int>& x) {
            ++checked;
            if (m.is_matchable(x) != brute_force_matchable(r.types(), x)) ++mismatches;
        });
    }
    out.require(mismatches == 0, "disagreements with brute force");
    out.detail << checked << " vectors over 20 rules, " << mismatches << " disagreements";
}

// 3. L intersected with the alpha-translated cone lies in the matchable set.
void dual_certificate(Outcome& out) {
    std::size_t tested = 0, violations = 0;
    for (const auto& r : oracle_rules()) {
        const Matchability m(r);
        const Rational alpha = dual_alpha(r);
        const auto basis = hermite_basis(r);
        for_each_box_point(r.q(), 12, [&](const std::vector<int>& x) {
            const std::vector<std::int64_t> xl(x.begin(), x.end());
            if (!in_lattice(xl, basis)) return;
            RationalVector target(x.begin(), x.end());
            if (!cone_membership(r.types(), target)) return;
            if (margin_lp(r.types(), target).first < alpha) return;
            ++tested;
            if (!m.is_matchable(x)) ++violations;
        });
    }
    out.require(violations == 0, "unmatchable points in the translated cone");
    out.require(tested > 0, "no vectors tested");
    out.detail << tested << " lattice points in the translated cones, " << violations << " violations";
}

// 4. Greedy blocks, underconstrained: exponential tail.
void greedy_exponential(Outcome& out) {
    auto c = base_config(rule({{2, 0}, {1, 1}}, {2, 1}), SchemeKind::Greedy, 1e5, 20);
    c.fit_model = FitModel::Exponential;
    c.r_min = 2;
    c.r_max = 30;
    const auto res = run_experiment(c);
    out.require(res.failed_seeds == 0, "failed seeds");
    out.require(res.fit.has_value(), "fit");
    if (!res.fit) return;
    out.require(res.fit->parameter > 0, "rate > 0");
    out.require(res.fit->r2 >= 0.98, "R^2 >= 0.98");
    out.detail << "rate " << res.fit->parameter << ", R^2 " << res.fit->r2 << ", " << res.tail.n_points
               << " core points";
}

// 5. Factor matching with coins, L = Z: exponential tail and coalescence.
void factor_exponential(Outcome& out) {
    const auto r = rule({{2}, {3}}, {1});
    auto c = base_config(r, SchemeKind::FactorExp, 1e5, 20);
    c.fit_model = FitModel::Exponential;
    c.r_min = 2;
    c.r_max = 30;
    const auto res = run_experiment(c);
    out.require(res.failed_seeds == 0, "failed seeds");
    out.require(res.fit.has_value(), "fit");
    if (res.fit) {
        out.require(res.fit->parameter > 0, "rate > 0");
        out.require(res.fit->r2 >= 0.98, "R^2 >= 0.98");
        out.detail << "rate " << res.fit->parameter << ", R^2 " << res.fit->r2 << "; ";
    }
    const double B = 5000;
    int agree = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto pts = sample_poisson_1d(r, B, 500, replica_seed(77, s));
        const auto d = discretize(pts);
        std::size_t core_first = 0;
        while (pts.x(d.sites[core_first].point) < -B) ++core_first;
        FactorOptions near, far;
        near.first_site = core_first - 50;
        far.first_site = core_first - 150;
        auto ends = [&](const Matching& m) {
            std::vector<std::size_t> e;
            for (auto p : m.block_ends)
                if (std::abs(pts.x(p)) <= B) e.push_back(p);
            return e;
        };
        agree += ends(factor_exp_1d(d, pts, r, near)) == ends(factor_exp_1d(d, pts, r, far));
    }
    out.require(agree >= 99, "coalescence in >= 99/100 seeds");
    out.detail << "coalescence " << agree << "/100";
}

// 6. Two-colour stack, critical: exponent 1/2 and growing first moment.
void critical_stack(Outcome& out) {
    const double B = 5e5;
    auto c = base_config(rule({{1, 1}}, {1, 1}), SchemeKind::TwoColourStack, B, 20);
    c.fit_model = FitModel::Power;
    c.r_min = 10;
    c.r_max = B / 20;
    c.moment_p = 1.0;
    c.nested_windows = 4;
    const auto res = run_experiment(c);
    out.require(res.failed_seeds == 0, "failed seeds");
    out.require(res.fit.has_value(), "fit");
    if (res.fit) {
        out.require(res.fit->parameter >= 0.38 && res.fit->parameter <= 0.62, "exponent in [0.38, 0.62]");
        out.detail << "exponent " << res.fit->parameter << " (R^2 " << res.fit->r2 << "); ";
    }
    out.require(res.moment.growth.size() == 4 && res.moment.monotone_growth, "monotone first-moment growth");
    out.detail << "E*X over nested windows:";
    for (double g : res.moment.growth) out.detail << ' ' << g;
}

// 7. Staged factor matching, L != Z: exponent 1, skip rate 1/3, stage decay.
void staged_factor(Outcome& out) {
    const double B = 5e5;
    auto c = base_config(rule({{2}}, {1}), SchemeKind::FactorStaged, B, 20);
    c.fit_model = FitModel::Power;
    c.r_min = 10;
    c.r_max = B / 20;
    const auto res = run_experiment(c);
    out.require(res.failed_seeds == 0, "failed seeds");
    out.require(res.fit.has_value(), "fit");
    if (res.fit) {
        out.require(res.fit->parameter >= 0.8 && res.fit->parameter <= 1.3, "exponent in [0.8, 1.3]");
        out.detail << "exponent " << res.fit->parameter << " (R^2 " << res.fit->r2 << "); ";
    }
    std::vector<double> active(9, 0.0);
    double total_active = 0, total_skipped = 0, sites = 0;
    for (const auto& d : res.seed_diagnostics) {
        if (!d.contains("stage_active")) continue;
        const auto a = d["stage_active"].get<std::vector<std::uint64_t>>();
        const auto s = d["stage_skipped"].get<std::vector<std::uint64_t>>();
        for (std::size_t i = 1; i < a.size(); ++i) {
            total_active += static_cast<double>(a[i]);
            total_skipped += static_cast<double>(s[i]);
            if (i <= 8) active[i] += static_cast<double>(a[i]);
        }
        sites += d["sites"].get<double>();
    }
    const double skip = total_active > 0 ? total_skipped / total_active : 0.0;
    out.require(std::abs(skip - 1.0 / 3.0) <= 0.02, "skip rate 1/3 +- 0.02");
    double C = 0;
    for (int s = 1; s <= 8; ++s) C = std::max(C, active[s] / sites * std::ldexp(1.0, s));
    out.require(C <= 4.0, "stage activity <= 4 * 2^-s");
    out.detail << "skip rate " << skip << ", max_s active(s) 2^s / sites = " << C;
}

// 8. Critical reduction on the degenerate triangle.
void critical_reduction(Outcome& out) {
    const double B = 5e5;
    const auto r = rule({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}, {2, 1, 1});
    const RationalVector eta{1, -1, -1};
    TailEstimate merged;
    std::size_t violations = 0;
    std::set<std::size_t> used_types;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto pts = sample_poisson_1d(r, B, B / 10, replica_seed(1, s));
        const auto m = critical_reduction_1d(pts, r);
        ValidationOptions vo;
        vo.core = Window::interval(-B, B);
        vo.allow_unmatched_core = true;
        vo.charge = eta;
        const auto rep = validate_matching(m, pts, r, vo);
        violations += rep.violations.size();
        for (const auto& f : m.families) used_types.insert(f.type_index);
        TailOptions to;
        to.core = Window::interval(-B, B);
        to.censor = CensorPolicy::Infinite;
        to.radii = default_radii(2.2 * B);
        merged.merge(empirical_tail(m, pts, to));
    }
    out.require(violations == 0, "validation clean with zero charge");
    out.require(!used_types.count(2), "type (0,1,1) unused");
    try {
        const auto fit = fit_power_exponent(merged, 10, B / 20);
        out.require(fit.parameter >= 0.35 && fit.parameter <= 0.7, "exponent in [0.35, 0.7]");
        out.detail << "exponent " << fit.parameter << " (R^2 " << fit.r2 << "), ";
    } catch (const Error& e) {
        out.require(false, e.what());
    }
    out.detail << violations << " violations, types used:";
    for (auto t : used_types) out.detail << ' ' << t;
}

// 9. Hilbert-curve lift to d = 2.
void dimension_lift(Outcome& out) {
    const auto p5 = hilbert_path(2, 5);
    std::set<std::vector<std::int64_t>> cells;
    bool steps = true;
    for (std::uint64_t t = 0; t < p5.size(); ++t) {
        const auto c = p5.cell(t);
        cells.insert(c);
        if (p5.index_of(c) != t) steps = false;
        if (t > 0) {
            const auto prev = p5.cell(t - 1);
            if (std::abs(c[0] - prev[0]) + std::abs(c[1] - prev[1]) != 1) steps = false;
        }
    }
    out.require(cells.size() == p5.size() && steps, "order-5 bijectivity and nearest-neighbour steps");

    const double c4 = curve_distortion(hilbert_path(2, 4));
    const double c5 = curve_distortion(p5);
    const double drift = std::abs(c5 - c4) / c4;
    out.require(std::isfinite(c5), "finite distortion");
    out.require(drift <= 0.10, "order 4 vs 5 distortion within 10%");
    out.detail << "C_emp order 4 = " << c4 << ", order 5 = " << c5 << " (drift " << drift * 100 << "%); ";

    const auto r = rule({{2, 0}, {1, 1}}, {2, 1});
    const double B = 1e5;
    const auto path = hilbert_path(2, 10);
    std::size_t bound_violations = 0, families = 0;
    double C_used = 0;
    TailEstimate merged;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto pts = sample_poisson_1d(r, B, B / 10, replica_seed(1, s));
        const auto m = greedy_blocks_1d(pts, r);
        DistortionOptions dopt;
        dopt.max_gap = static_cast<std::uint64_t>(max_family_index_gap(m, pts)) + 1;
        dopt.samples = 0;
        const double C = curve_distortion(path, dopt);
        C_used = std::max(C_used, C);
        const auto lifted = lift_matching(m, pts, path, replica_seed(2, s));
        for (const auto& f : m.families) {
            ++families;
            const double d1 = family_diameter(f, pts);
            const double d2 = family_diameter(f, lifted.config);
            if (d2 > std::sqrt(C) * std::sqrt(d1 + 1.0) + std::sqrt(2.0) + 1e-9) ++bound_violations;
        }
        TailOptions to;
        std::vector<bool> mask(pts.size());
        for (std::size_t p = 0; p < pts.size(); ++p) mask[p] = std::abs(pts.x(p)) <= B;
        to.core_mask = std::move(mask);
        to.radii = default_radii(50);
        merged.merge(empirical_tail(lifted.matching, lifted.config, to));
    }
    out.require(bound_violations == 0, "lifted diameter bound");
    out.detail << bound_violations << "/" << families << " families over the bound (C_emp " << C_used << "); ";
    try {
        const auto fit = fit_exponential_rate(merged, 1, 8);
        out.require(fit.r2 >= 0.95 && fit.parameter > 0, "exp(-c r^2) fit R^2 >= 0.95");
        out.detail << "lifted greedy rate in r^2 " << fit.parameter << " (R^2 " << fit.r2 << ")";
    } catch (const Error& e) {
        out.require(false, e.what());
    }
}

// 10. Pair rules: flow equals subset min-cut, set analysis agrees with the cone.
void pairs_consistency(Outcome& out) {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> qd(1, 6), num(1, 9), den(1, 4);
    std::bernoulli_distribution edge(0.45);
    int graphs = 0, flow_mismatch = 0, inconsistent = 0;
    while (graphs < 200) {
        const auto q = static_cast<std::size_t>(qd(rng));
        PairGraph g(q);
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = i; j < q; ++j)
                if (edge(rng)) g.add_edge(i, j);
        if (g.edge_count() == 0) continue;
        RationalVector lambda;
        for (std::size_t i = 0; i < q; ++i) lambda.push_back(Rational(num(rng)) / den(rng));
        try {
            const auto rep = consistency_report(lambda, g);
            if (rep.flow != rep.min_cut) ++flow_mismatch;
            if (!rep.consistent()) ++inconsistent;
        } catch (const Error& e) {
            out.detail << "[" << e.what() << "] ";
            ++inconsistent;
        }
        ++graphs;
    }
    out.require(flow_mismatch == 0, "max-flow equals min-cut");
    out.require(inconsistent == 0, "consistency with the cone classification");
    out.detail << graphs << " graphs, " << flow_mismatch << " flow/cut mismatches, " << inconsistent
               << " inconsistencies";
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"classification table", classification_table},
        {"matchability oracle", matchability_oracle},
        {"dual-lattice certificate", dual_certificate},
        {"greedy exponential tail", greedy_exponential},
        {"factor exponential tail", factor_exponential},
        {"critical exponent 1/2", critical_stack},
        {"staged factor exponent 1", staged_factor},
        {"critical reduction", critical_reduction},
        {"dimension lift", dimension_lift},
        {"pairs consistency", pairs_consistency},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failed = 0;
    for (std::size_t n = 0; n < criteria.size(); ++n) {
        const int id = static_cast<int>(n) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[n].second(out);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !out.pass;
        std::printf("criterion %2d %s: %s (%.1f s) %s\n", id, out.pass ? "PASS" : "FAIL", criteria[n].first, secs,
                    out.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
