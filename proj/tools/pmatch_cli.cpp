#include "pmatch/error.hpp"
#include "pmatch/experiment.hpp"
#include "pmatch/io.hpp"
#include "pmatch/pairs.hpp"
#include "pmatch/spacefill.hpp"
#include "pmatch/stats.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace pmatch;

namespace {

enum Exit { Ok = 0, InputError = 2, PreconditionMismatch = 3, InvariantBreach = 4 };

int exit_code(Errc code) {
    switch (code) {
        case Errc::NotInCone:
        case Errc::InCone:
        case Errc::NotOnBoundary:
        case Errc::RankDeficient:
        case Errc::LatticeNotFull:
        case Errc::WrongClassification:
        case Errc::WrongRule:
        case Errc::NotMatchable:
        case Errc::UnsupportedDimension:
        case Errc::RangeOverflow: return PreconditionMismatch;
        case Errc::InconsistencyDetected: return InvariantBreach;
        default: return InputError;
    }
}

// A file path, or inline JSON when the argument starts with '{'.
json load_json_arg(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && arg[first] == '{') {
        try {
            return json::parse(arg);
        } catch (const json::exception& e) {
            fail(Errc::ParseError, std::string("inline JSON: ") + e.what());
        }
    }
    return load_json_file(arg);
}

int cmd_classify(const std::string& rule_arg, bool as_json) {
    const auto rule = rule_from_json(load_json_arg(rule_arg));
    const auto regime = expected_regime(rule);
    if (as_json) {
        std::cout << regime_to_json(rule, regime).dump(2) << '\n';
        return Ok;
    }
    std::cout << regime_text(regime) << '\n';
    const auto& c = regime.classification;
    if (c.charge) {
        std::cout << (c.kind == ClassKind::Unsatisfiable ? "separating charge: " : "supporting charge: ")
                  << rational_vector_to_json(*c.charge).dump() << '\n';
    }
    if (c.witness) std::cout << "cone witness: " << rational_vector_to_json(c.witness->a).dump() << '\n';
    return Ok;
}

struct SimulateFlags {
    std::string config;
    std::optional<std::uint64_t> seeds, base_seed;
    std::optional<double> window, margin, r_min, r_max;
    std::optional<unsigned> threads;
    std::optional<std::string> output, scheme;
    bool no_plots = false;
    bool dump = false;
};

int cmd_simulate(const SimulateFlags& f) {
    auto config = config_from_json(load_json_arg(f.config));
    if (const char* env = std::getenv("PMATCH_BASE_SEED")) {
        try {
            config.base_seed = std::stoull(env);
        } catch (const std::exception&) {
            fail(Errc::ParseError, "PMATCH_BASE_SEED is not an unsigned integer");
        }
    }
    if (f.seeds) config.seed_count = *f.seeds;
    if (f.base_seed) config.base_seed = *f.base_seed;
    if (f.window) config.window = *f.window;
    if (f.margin) config.margin = *f.margin;
    if (f.r_min) config.r_min = *f.r_min;
    if (f.r_max) config.r_max = *f.r_max;
    if (f.threads) config.threads = *f.threads;
    if (f.output) config.output = *f.output;
    if (f.scheme) config.scheme = scheme_from_string(*f.scheme);
    if (f.no_plots) config.plots = false;
    if (f.dump) config.dump_first_seed = true;

    check_preconditions(config);
    const auto result = run_experiment(config);
    write_artifacts(config, result);

    std::cout << "seeds " << config.seed_count << " (failed " << result.failed_seeds << "), core points "
              << result.tail.n_points << ", censored " << result.tail.censored << '\n';
    if (result.fit)
        std::cout << to_string(result.fit->model) << " fit on [" << result.fit->r_min << ", " << result.fit->r_max
                  << "]: " << result.fit->parameter << " (R^2 " << result.fit->r2 << ")\n";
    else
        std::cout << "no fit: " << result.fit_error << '\n';
    std::cout << "artifacts in " << config.output.string() << '\n';
    for (const auto& d : result.seed_diagnostics)
        if (d.contains("error")) std::cerr << "seed " << d["index"] << ": " << d["error"].get<std::string>() << '\n';
    return result.invariant_breach ? InvariantBreach : Ok;
}

int cmd_pairs(const std::string& graph_arg, bool as_json) {
    const json j = load_json_arg(graph_arg);
    if (!j.contains("graph") || !j.contains("lambda")) fail(Errc::ParseError, "expected {\"graph\": ..., \"lambda\": ...}");
    const auto graph = graph_from_json(j["graph"]);
    const auto lambda = lambda_from_json(j["lambda"]);
    const auto sets = classify_sets(lambda, graph);
    const auto flow = max_fractional_matching(lambda, graph);
    const auto check = consistency_report(lambda, graph);
    if (as_json) {
        std::cout << pairs_to_json(sets, flow, check).dump(2) << '\n';
    } else {
        std::cout << to_string(sets.verdict()) << " (geometry: " << to_string(check.geometry_verdict) << ")\n";
        for (const auto& e : sets.sets) {
            if (e.status == SetStatus::Excessive || e.status == SetStatus::Neutral) continue;
            std::cout << to_string(e.status) << " set {";
            for (int i = 0, n = 0; i < 32; ++i)
                if (e.set >> i & 1u) std::cout << (n++ ? "," : "") << i + 1;
            std::cout << "}: lambda(S)=" << format_rational(e.lambda_set)
                      << ", lambda(N(S))=" << format_rational(e.lambda_neighbourhood) << '\n';
        }
        std::cout << "max flow " << format_rational(flow.flow) << ", min cut " << format_rational(check.min_cut)
                  << '\n';
        for (std::size_t i = 0; i < flow.a.size(); ++i)
            for (std::size_t k = i; k < flow.a.size(); ++k)
                if (flow.a[i][k] != 0)
                    std::cout << "a[" << i + 1 << "][" << k + 1 << "] = " << format_rational(flow.a[i][k]) << '\n';
        for (const auto& issue : check.issues) std::cerr << "inconsistency: " << issue << '\n';
    }
    return check.consistent() ? Ok : InvariantBreach;
}

struct LiftFlags {
    std::string run;
    int d = 2;
    int order = 10;
    std::uint64_t seed = 1;
    std::optional<std::string> output;
    std::optional<double> r_min, r_max;
};

int cmd_lift(const LiftFlags& f) {
    const fs::path run = f.run;
    const auto config = config_from_json(load_json_file(run / "run_manifest.json"));
    std::ifstream in(run / "matching_seed0.csv");
    if (!in) fail(Errc::ParseError, "no matching_seed0.csv in " + run.string() + " (simulate with --dump)");
    const auto [points, matching] = read_matching_csv(in);

    const CurvePath path = hilbert_path(f.d, f.order);
    const auto lifted = lift_matching(matching, points, path, f.seed);
    const Window core = Window::interval(-config.window, config.window);
    TailOptions topt;
    std::vector<bool> mask(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) mask[p] = core.contains(points.position(p));
    topt.core_mask = std::move(mask);
    topt.censor = config.censor_value();
    topt.radii = default_radii(2.0 * std::sqrt(static_cast<double>(path.size())) + 10.0);
    const auto tail = empirical_tail(lifted.matching, lifted.config, topt);

    const fs::path out = f.output ? fs::path(*f.output) : run / "lifted";
    fs::create_directories(out);
    {
        std::ofstream csv(out / "lifted_matching.csv");
        write_matching_csv(csv, lifted.matching, lifted.config);
        std::ofstream tail_csv(out / "tail.csv");
        write_tail_csv(tail_csv, tail);
    }

    DistortionOptions dopt;
    dopt.max_gap = static_cast<std::uint64_t>(max_family_index_gap(matching, points)) + 1;
    json manifest = {{"source_run", run.string()},
                     {"d", f.d},
                     {"order", f.order},
                     {"seed", f.seed},
                     {"offset", lifted.offset},
                     {"shift", lifted.shift},
                     {"curve_distortion", curve_distortion(path, dopt)},
                     {"n_points", tail.n_points},
                     {"censored", tail.censored}};
    const double r_min = f.r_min.value_or(1.0);
    const double r_max = f.r_max.value_or(10.0);
    try {
        const auto fit = fit_exponential_rate(tail, r_min, r_max);
        manifest["fit"] = fit_to_json(fit);
        std::cout << "exponential fit in r^" << f.d << " on [" << r_min << ", " << r_max << "]: " << fit.parameter
                  << " (R^2 " << fit.r2 << ")\n";
    } catch (const Error& e) {
        manifest["fit"] = nullptr;
        manifest["fit_error"] = e.what();
        std::cout << "no fit: " << e.what() << '\n';
    }
    write_json_file(out / "lift_manifest.json", manifest);
    std::cout << "lifted " << lifted.config.size() << " points into d=" << f.d << "; artifacts in " << out.string()
              << '\n';
    return Ok;
}

int cmd_report(const std::string& tail_path, const std::string& model, double r_min, double r_max, std::size_t dim,
               bool as_json) {
    std::ifstream in(tail_path);
    if (!in) fail(Errc::ParseError, "cannot read " + tail_path);
    const auto tail = read_tail_csv(in, dim);
    FitReport fit;
    if (model == "power")
        fit = fit_power_exponent(tail, r_min, r_max);
    else if (model == "exponential")
        fit = fit_exponential_rate(tail, r_min, r_max);
    else
        fail(Errc::ParseError, "unknown fit model '" + model + "'");
    if (as_json)
        std::cout << fit_to_json(fit).dump(2) << '\n';
    else
        std::cout << to_string(fit.model) << " parameter " << fit.parameter << " +- " << fit.stderr_ << " on ["
                  << fit.r_min << ", " << fit.r_max << "], R^2 " << fit.r2 << ", " << fit.n_grid
                  << " grid points\n";
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multicolour Poisson matching toolkit"};
    app.set_version_flag("--version", std::string(PMATCH_VERSION));
    app.require_subcommand(1);

    bool as_json = false;

    std::string rule_arg;
    auto* classify = app.add_subcommand("classify", "Classify a matching rule and print the expected tail regime");
    classify->add_option("rule", rule_arg, "Rule file or inline JSON")->required();
    classify->add_flag("--json", as_json, "Print a JSON report");

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Run an experiment and write its artifacts");
    simulate->add_option("config", sim.config, "Config file or inline JSON")->required();
    simulate->add_option("--seeds", sim.seeds, "Number of replicas");
    simulate->add_option("--base-seed", sim.base_seed, "Base seed (overrides PMATCH_BASE_SEED)");
    simulate->add_option("--window", sim.window, "Core half-width B");
    simulate->add_option("--margin", sim.margin, "Margin M beyond the core");
    simulate->add_option("--r-min", sim.r_min, "Lower end of the fit range");
    simulate->add_option("--r-max", sim.r_max, "Upper end of the fit range");
    simulate->add_option("--threads", sim.threads, "Worker threads (0: all cores)");
    simulate->add_option("--scheme", sim.scheme, "Matching scheme");
    simulate->add_option("-o,--output", sim.output, "Output directory");
    simulate->add_flag("--no-plots", sim.no_plots, "Skip the SVG plots");
    simulate->add_flag("--dump", sim.dump, "Write points and matching of seed 0");

    std::string graph_arg;
    auto* pairs = app.add_subcommand("pairs", "Analyse a pair-matching rule given by a colour graph");
    pairs->add_option("graph", graph_arg, "Graph file or inline JSON {graph, lambda}")->required();
    pairs->add_flag("--json", as_json, "Print a JSON report");

    LiftFlags lift;
    auto* lift_cmd = app.add_subcommand("lift", "Lift the seed-0 matching of a 1-d run to d dimensions");
    lift_cmd->add_option("run", lift.run, "Run directory written by simulate --dump")->required();
    lift_cmd->add_option("--d", lift.d, "Target dimension (2 or 3)");
    lift_cmd->add_option("--order", lift.order, "Hilbert curve order");
    lift_cmd->add_option("--seed", lift.seed, "Seed of the lift randomness");
    lift_cmd->add_option("--r-min", lift.r_min, "Lower end of the exponential fit range");
    lift_cmd->add_option("--r-max", lift.r_max, "Upper end of the exponential fit range");
    lift_cmd->add_option("-o,--output", lift.output, "Output directory (default RUN/lifted)");

    std::string tail_path, model = "power";
    double r_min = 5, r_max = 100;
    std::size_t dim = 1;
    auto* report = app.add_subcommand("report", "Re-fit an existing tail.csv");
    report->add_option("tail", tail_path, "tail.csv file")->required();
    report->add_option("--model", model, "power or exponential");
    report->add_option("--r-min", r_min, "Lower end of the fit range");
    report->add_option("--r-max", r_max, "Upper end of the fit range");
    report->add_option("--dim", dim, "Dimension d for the exponential model");
    report->add_flag("--json", as_json, "Print a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : InputError;
    }

    try {
        if (*classify) return cmd_classify(rule_arg, as_json);
        if (*simulate) return cmd_simulate(sim);
        if (*pairs) return cmd_pairs(graph_arg, as_json);
        if (*lift_cmd) return cmd_lift(lift);
        if (*report) return cmd_report(tail_path, model, r_min, r_max, dim, as_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return InputError;
    }
    return Ok;
}
