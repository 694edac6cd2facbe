#pragma once

#include "pmatch/io.hpp"
#include "pmatch/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pmatch {

enum class SchemeKind { Greedy, FactorExp, FactorStaged, TwoColourStack, CriticalReduction };
std::string_view to_string(SchemeKind scheme);
/// Errors: ParseError.
SchemeKind scheme_from_string(std::string_view name);

struct LiftSpec {
    int d = 2;
    int order = 10;
};

struct ExperimentConfig {
    json rule_json;
    MatchingRule rule;
    SchemeKind scheme = SchemeKind::Greedy;
    std::optional<LiftSpec> lift;
    double window = 1000.0;        // core window [-B, B]
    std::optional<double> margin;  // default max(100, B / 10)
    std::uint64_t seed_count = 1;
    std::uint64_t base_seed = 1;
    std::optional<FitModel> fit_model;  // default from the scheme
    std::optional<double> r_min;        // default 5
    std::optional<double> r_max;        // default B / 10
    std::optional<CensorPolicy> censor;
    int s_max = 40;
    double moment_p = 1.0;
    int nested_windows = 4;
    unsigned threads = 0;  // 0: hardware concurrency
    bool plots = true;
    bool dump_first_seed = false;
    std::filesystem::path output = "pmatch-out";

    [[nodiscard]] double margin_value() const;
    [[nodiscard]] FitModel fit_model_value() const;
    [[nodiscard]] double r_min_value() const;
    [[nodiscard]] double r_max_value() const;
    [[nodiscard]] CensorPolicy censor_value() const;
};

/// Errors: ParseError plus the rule validation errors. A "config" member (as in
/// a run manifest) is unwrapped first.
ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& config);

/// Scheme prerequisites against classify(rule).
/// Errors: WrongClassification, LatticeNotFull, RankDeficient, WrongRule, UnsupportedDimension.
void check_preconditions(const ExperimentConfig& config);

struct SeedOutcome {
    std::uint64_t index = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    bool invariant_breach = false;
    std::string error;
    TailEstimate tail;
    std::vector<TailEstimate> nested;  // growing core windows, families kept inside
    json diagnostics;
};

/// One replica; a pure function of (config, index).
SeedOutcome run_seed(const ExperimentConfig& config, std::uint64_t index);

struct ExperimentResult {
    TailEstimate tail;
    std::vector<TailEstimate> nested;
    std::vector<json> seed_diagnostics;
    std::size_t failed_seeds = 0;
    bool invariant_breach = false;
    std::optional<FitReport> fit;
    std::string fit_error;
    MomentReport moment;
};

/// Runs all seeds on a worker pool and merges them in seed order.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// tail.csv, fit.json, run_manifest.json and optional SVG plots in config.output.
void write_artifacts(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace pmatch
