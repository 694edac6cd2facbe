#include "pmatch/experiment.hpp"

#include "pmatch/error.hpp"
#include "pmatch/lattice.hpp"
#include "pmatch/spacefill.hpp"
#include "pmatch/svg.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#ifndef PMATCH_VERSION
#define PMATCH_VERSION "0.0.0"
#endif

namespace pmatch {

std::string_view to_string(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::Greedy: return "greedy";
        case SchemeKind::FactorExp: return "factor_exp";
        case SchemeKind::FactorStaged: return "factor_staged";
        case SchemeKind::TwoColourStack: return "two_colour_stack";
        case SchemeKind::CriticalReduction: return "critical_reduction";
    }
    return "unknown";
}

SchemeKind scheme_from_string(std::string_view name) {
    for (auto s : {SchemeKind::Greedy, SchemeKind::FactorExp, SchemeKind::FactorStaged, SchemeKind::TwoColourStack,
                   SchemeKind::CriticalReduction})
        if (to_string(s) == name) return s;
    fail(Errc::ParseError, "unknown scheme '" + std::string(name) + "'");
}

double ExperimentConfig::margin_value() const { return margin ? *margin : std::max(100.0, window / 10.0); }

FitModel ExperimentConfig::fit_model_value() const {
    if (fit_model) return *fit_model;
    return scheme == SchemeKind::Greedy || scheme == SchemeKind::FactorExp ? FitModel::Exponential : FitModel::Power;
}

double ExperimentConfig::r_min_value() const { return r_min ? *r_min : 5.0; }
double ExperimentConfig::r_max_value() const { return r_max ? *r_max : window / 10.0; }

CensorPolicy ExperimentConfig::censor_value() const {
    if (censor) return *censor;
    return scheme == SchemeKind::Greedy || scheme == SchemeKind::FactorExp ? CensorPolicy::Error
                                                                            : CensorPolicy::Infinite;
}

namespace {

template <class T>
std::optional<T> optional_field(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(const json& input) {
    const json& j = input.contains("config") ? input.at("config") : input;
    ExperimentConfig c;
    try {
        c.rule_json = j.at("rule");
        c.rule = rule_from_json(c.rule_json);
        c.scheme = scheme_from_string(j.at("scheme").get<std::string>());
        if (j.contains("lift") && !j.at("lift").is_null()) {
            const auto& l = j.at("lift");
            if (!(l.is_string() && l.get<std::string>() == "none")) {
                if (l.value("kind", std::string("hilbert")) != "hilbert")
                    fail(Errc::ParseError, "only hilbert lifts are supported");
                c.lift = LiftSpec{l.value("d", 2), l.value("order", 10)};
            }
        }
        c.window = j.value("window", c.window);
        c.margin = optional_field<double>(j, "margin");
        if (j.contains("seeds")) {
            c.seed_count = j.at("seeds").value("count", c.seed_count);
            c.base_seed = j.at("seeds").value("base", c.base_seed);
        }
        if (j.contains("fit")) {
            const auto& f = j.at("fit");
            if (auto m = optional_field<std::string>(f, "model")) {
                if (*m == "power") c.fit_model = FitModel::Power;
                else if (*m == "exponential") c.fit_model = FitModel::Exponential;
                else if (*m != "auto") fail(Errc::ParseError, "fit.model must be power, exponential or auto");
            }
            c.r_min = optional_field<double>(f, "r_min");
            c.r_max = optional_field<double>(f, "r_max");
        }
        if (auto cp = optional_field<std::string>(j, "censor")) {
            if (*cp == "error") c.censor = CensorPolicy::Error;
            else if (*cp == "infinite") c.censor = CensorPolicy::Infinite;
            else fail(Errc::ParseError, "censor must be error or infinite");
        }
        c.s_max = j.value("s_max", c.s_max);
        if (j.contains("moment")) {
            c.moment_p = j.at("moment").value("p", c.moment_p);
            c.nested_windows = j.at("moment").value("nested", c.nested_windows);
        }
        c.threads = j.value("threads", c.threads);
        c.plots = j.value("plots", c.plots);
        c.dump_first_seed = j.value("dump", c.dump_first_seed);
        if (j.contains("output")) c.output = j.at("output").get<std::string>();
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("bad experiment config: ") + e.what());
    }
    if (!(c.window > 0.0)) fail(Errc::ParseError, "window must be positive");
    if (c.margin && *c.margin < 0.0) fail(Errc::ParseError, "margin must be non-negative");
    if (c.nested_windows < 0) fail(Errc::ParseError, "moment.nested must be non-negative");
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["rule"] = c.rule_json;
    j["scheme"] = std::string(to_string(c.scheme));
    j["lift"] = c.lift ? json{{"kind", "hilbert"}, {"d", c.lift->d}, {"order", c.lift->order}} : json("none");
    j["window"] = c.window;
    j["margin"] = c.margin_value();
    j["seeds"] = {{"count", c.seed_count}, {"base", c.base_seed}};
    j["fit"] = {{"model", std::string(to_string(c.fit_model_value()))},
                {"r_min", c.r_min_value()},
                {"r_max", c.r_max_value()}};
    j["censor"] = c.censor_value() == CensorPolicy::Error ? "error" : "infinite";
    j["s_max"] = c.s_max;
    j["moment"] = {{"p", c.moment_p}, {"nested", c.nested_windows}};
    j["threads"] = c.threads;
    j["plots"] = c.plots;
    j["dump"] = c.dump_first_seed;
    j["output"] = c.output.string();
    return j;
}

void check_preconditions(const ExperimentConfig& config) {
    const auto& rule = config.rule;
    const auto kind = classify(rule).kind;
    auto need = [&](ClassKind expected) {
        if (kind != expected)
            fail(Errc::WrongClassification, std::string(to_string(config.scheme)) + " needs classification " +
                                                std::string(to_string(expected)) + ", got " +
                                                std::string(to_string(kind)));
    };
    switch (config.scheme) {
        case SchemeKind::Greedy: need(ClassKind::Underconstrained); break;
        case SchemeKind::FactorExp:
            need(ClassKind::Underconstrained);
            if (!is_full_lattice(rule)) fail(Errc::LatticeNotFull, "factor_exp needs L = Z^q");
            break;
        case SchemeKind::FactorStaged:
            need(ClassKind::Underconstrained);
            (void)quotient_group(rule);
            break;
        case SchemeKind::TwoColourStack:
            if (rule.q() != 2 || rule.k() != 1 || rule.type(0).counts != std::vector<int>{1, 1})
                fail(Errc::WrongRule, "two_colour_stack needs V = {(1,1)}");
            need(ClassKind::Critical);
            break;
        case SchemeKind::CriticalReduction: need(ClassKind::Critical); break;
    }
    if (config.lift) {
        const CurvePath path = hilbert_path(config.lift->d, config.lift->order);
        const double reach = config.window + config.margin_value() + 1.0;
        if (reach > static_cast<double>(path.size() / 8))
            fail(Errc::RangeOverflow, "window does not fit in the middle of the curve; raise lift.order");
    }
}

namespace {

Matching build_matching(const ExperimentConfig& config, const PointConfiguration& points, json& diag) {
    const auto& rule = config.rule;
    const double scale = to_double(rule.total_intensity());
    switch (config.scheme) {
        case SchemeKind::Greedy: return greedy_blocks_1d(points, rule);
        case SchemeKind::FactorExp:
            if (points.empty()) return {};
            return factor_exp_1d(discretize(points, scale), points, rule);
        case SchemeKind::FactorStaged: {
            if (points.empty()) return {};
            StagedOptions options;
            options.s_max = config.s_max;
            auto staged = factor_staged_1d(discretize(points, scale), points, rule, options);
            const auto& d = staged.diagnostics;
            diag["skip_rate"] = d.skip_rate();
            diag["stage_active"] = d.active;
            diag["stage_skipped"] = d.skipped;
            diag["stage_overflow_points"] = d.overflow_points;
            diag["sites"] = d.sites;
            return std::move(staged.matching);
        }
        case SchemeKind::TwoColourStack: return two_colour_stack_1d(points, rule);
        case SchemeKind::CriticalReduction: return critical_reduction_1d(points, rule);
    }
    return {};
}

}  // namespace

SeedOutcome run_seed(const ExperimentConfig& config, std::uint64_t index) {
    SeedOutcome out;
    out.index = index;
    out.seed = replica_seed(config.base_seed, index);
    const double B = config.window;
    const double M = config.margin_value();
    json diag = {{"index", index}, {"seed", out.seed}};
    try {
        const auto& rule = config.rule;
        PointConfiguration points = sample_poisson_1d(rule, B, M, out.seed);
        Matching matching = build_matching(config, points, diag);

        const Window core = Window::interval(-B, B);
        ValidationOptions vopt;
        vopt.core = core;
        // unmatched core points mean too small a margin; the tail reports them per censor policy
        vopt.allow_unmatched_core = true;
        const auto report = validate_matching(matching, points, rule, vopt);
        diag["points"] = points.size();
        diag["families"] = matching.families.size();
        diag["unmatched"] = matching.unmatched.size();
        diag["unmatched_core"] = report.censored_core_points;
        diag["violations"] = report.violations.size();
        if (!report.clean()) {
            out.invariant_breach = true;
            fail(Errc::InconsistencyDetected,
                 "matching failed validation: " + std::string(to_string(report.violations.front().kind)) + ": " +
                     report.violations.front().message);
        }

        TailOptions topt;
        topt.core = core;
        topt.censor = config.censor_value();
        const PointConfiguration* stats_points = &points;
        const Matching* stats_matching = &matching;
        LiftResult lifted;
        if (config.lift) {
            const CurvePath path = hilbert_path(config.lift->d, config.lift->order);
            lifted = lift_matching(matching, points, path, replica_seed(out.seed, 0x4c494654));
            std::vector<bool> mask(points.size());
            for (std::size_t p = 0; p < points.size(); ++p) mask[p] = core.contains(points.position(p));
            topt.core_mask = std::move(mask);
            stats_points = &lifted.config;
            stats_matching = &lifted.matching;
            diag["lift_offset"] = lifted.offset;
        }
        topt.radii = default_radii(config.lift ? 2.0 * std::sqrt(2.0 * (B + M)) + 10.0 : 2.0 * (B + M));
        out.tail = empirical_tail(*stats_matching, *stats_points, topt);

        if (!config.lift) {
            for (int k = 1; k <= config.nested_windows; ++k) {
                TailOptions nopt = topt;
                const double half = B * k / config.nested_windows;
                nopt.core = Window::interval(-half, half);
                nopt.require_family_inside = true;
                out.nested.push_back(empirical_tail(matching, points, nopt));
            }
        }
        diag["core_points"] = out.tail.n_points;
        diag["censored"] = out.tail.censored;
        out.ok = true;
    } catch (const Error& e) {
        out.ok = false;
        out.error = e.what();
        diag["error"] = out.error;
    }
    diag["ok"] = out.ok;
    out.diagnostics = std::move(diag);
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const std::size_t n = config.seed_count;
    std::vector<SeedOutcome> outcomes(n);
    unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) outcomes[i] = run_seed(config, i);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    ExperimentResult result;
    for (auto& o : outcomes) {
        result.seed_diagnostics.push_back(o.diagnostics);
        result.invariant_breach |= o.invariant_breach;
        if (!o.ok) {
            ++result.failed_seeds;
            continue;
        }
        result.tail.merge(o.tail);
        if (result.nested.empty()) result.nested = o.nested;
        else
            for (std::size_t k = 0; k < o.nested.size(); ++k) result.nested[k].merge(o.nested[k]);
        o.tail = {};
        o.nested.clear();
    }
    if (result.tail.n_points > 0) {
        try {
            result.fit = config.fit_model_value() == FitModel::Power
                             ? fit_power_exponent(result.tail, config.r_min_value(), config.r_max_value())
                             : fit_exponential_rate(result.tail, config.r_min_value(), config.r_max_value());
        } catch (const Error& e) {
            result.fit_error = e.what();
        }
        result.moment = moment_estimate(result.tail, config.moment_p, result.nested);
    } else {
        result.fit_error = "no data";
    }
    return result;
}

void write_artifacts(const ExperimentConfig& config, const ExperimentResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output);
    {
        std::ofstream tail(config.output / "tail.csv");
        if (!tail) fail(Errc::ParseError, "cannot write tail.csv in " + config.output.string());
        write_tail_csv(tail, result.tail);
    }
    json fit;
    if (result.fit) {
        fit = fit_to_json(*result.fit);
    } else {
        fit = {{"model", std::string(to_string(config.fit_model_value()))},
               {"parameter", nullptr},
               {"r_min", config.r_min_value()},
               {"r_max", config.r_max_value()},
               {"r2", nullptr},
               {"stderr", nullptr},
               {"n_points", result.tail.n_points},
               {"error", result.fit_error}};
    }
    write_json_file(config.output / "fit.json", fit);

    std::vector<std::string> artifacts{"tail.csv", "fit.json", "run_manifest.json"};
    if (config.plots && result.tail.n_points > 0) {
        const std::string title = std::string(to_string(config.scheme)) + " survival";
        std::ofstream(config.output / "tail_loglog.svg") << survival_svg(result.tail, PlotAxes::LogLog, title);
        std::ofstream(config.output / "tail_semilog.svg") << survival_svg(result.tail, PlotAxes::SemiLog, title);
        artifacts.push_back("tail_loglog.svg");
        artifacts.push_back("tail_semilog.svg");
    }
    if (config.dump_first_seed && config.seed_count > 0) {
        // regenerate seed 0 so the dump does not keep every replica in memory
        const auto& rule = config.rule;
        const auto points = sample_poisson_1d(rule, config.window, config.margin_value(),
                                              replica_seed(config.base_seed, 0));
        json ignored;
        const auto matching = build_matching(config, points, ignored);
        std::ofstream pts(config.output / "points_seed0.csv");
        write_points_csv(pts, points);
        std::ofstream mat(config.output / "matching_seed0.csv");
        write_matching_csv(mat, matching, points);
        artifacts.push_back("points_seed0.csv");
        artifacts.push_back("matching_seed0.csv");
    }

    json moment = {{"p", config.moment_p},
                   {"estimate", result.moment.estimate},
                   {"nested", result.moment.growth},
                   {"monotone_growth", result.moment.monotone_growth}};
    json manifest = {{"tool", "pmatch"},
                     {"version", PMATCH_VERSION},
                     {"config", config_to_json(config)},
                     {"classification", regime_to_json(config.rule, expected_regime(config.rule))},
                     {"n_points", result.tail.n_points},
                     {"censored", result.tail.censored},
                     {"failed_seeds", result.failed_seeds},
                     {"fit", fit},
                     {"moment", moment},
                     {"seeds", result.seed_diagnostics},
                     {"artifacts", artifacts}};
    write_json_file(config.output / "run_manifest.json", manifest);
}

}  // namespace pmatch
