#pragma once

#include "pmatch/pointproc.hpp"
#include "pmatch/schemes.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pmatch {

/// Point-weighted empirical tail P*(X > r) of the family diameter on a radius grid.
struct TailEstimate {
    std::vector<double> radii;          // increasing
    std::vector<double> survival;       // P(X > radii[i])
    std::vector<std::uint64_t> exceed;  // counts behind survival; empty for synthetic tails
    std::uint64_t n_points = 0;
    std::uint64_t censored = 0;  // unmatched core points counted as X = infinity
    std::size_t dim = 1;
    // Raw (diameter, core points in the family) pairs when requested.
    std::optional<std::vector<std::pair<double, std::uint32_t>>> families;

    /// Synthetic tail from given survival values.
    static TailEstimate from_survival(std::vector<double> radii, std::vector<double> survival, std::size_t dim = 1);

    /// Count-weighted merge; associative and commutative. Errors: DimensionMismatch on grid mismatch.
    void merge(const TailEstimate& other);
};

enum class CensorPolicy {
    Error,     // an unmatched core point raises UnmatchedCorePoint
    Infinite,  // counts as a point with infinite diameter
};

struct TailOptions {
    std::vector<double> radii;  // defaults to default_radii()
    Window core;
    // Per-point core membership; overrides `core` when set.
    std::optional<std::vector<bool>> core_mask;
    CensorPolicy censor = CensorPolicy::Error;
    // Count only core points whose whole family lies inside the core window
    // (unmatched core points are then skipped too).
    bool require_family_inside = false;
    bool keep_families = false;
};

/// Grid of quarter-unit steps up to 50, then 40 log-spaced radii per decade up to r_max.
std::vector<double> default_radii(double r_max);

/// Euclidean diameter (max pairwise distance) of a set of points.
double family_diameter(const Family& family, const PointConfiguration& config);

/// Errors: UnmatchedCorePoint (under CensorPolicy::Error).
TailEstimate empirical_tail(const Matching& matching, const PointConfiguration& config, const TailOptions& options);
TailEstimate empirical_tail(const Matching& matching, const PointConfiguration& config, const Window& core);

enum class FitModel { Power, Exponential };
std::string_view to_string(FitModel model);

struct FitReport {
    FitModel model = FitModel::Power;
    double parameter = 0.0;  // exponent (power) or rate (exponential)
    double r_min = 0.0;
    double r_max = 0.0;
    double r2 = 0.0;
    double stderr_ = 0.0;
    std::size_t n_grid = 0;      // grid points used by the regression
    std::uint64_t n_points = 0;  // sample size behind the tail
};

/// Slope of log S against log r; needs 10 grid points with S > 0. Errors: InsufficientData.
FitReport fit_power_exponent(const TailEstimate& tail, double r_min, double r_max);
/// Slope of log S against r^d. Errors: InsufficientData.
FitReport fit_exponential_rate(const TailEstimate& tail, double r_min, double r_max);

struct MomentReport {
    double estimate = 0.0;
    std::vector<double> growth;  // estimates over the nested tails, in the order given
    bool monotone_growth = false;
};

/// Empirical E*[X^p]: exact from raw families when present, otherwise the
/// layer-cake upper sum on the grid. Infinite when censored points are present.
double moment_value(const TailEstimate& tail, double p);
MomentReport moment_estimate(const TailEstimate& tail, double p, std::span<const TailEstimate> nested = {});

void write_tail_csv(std::ostream& out, const TailEstimate& tail);
/// Reads r, survival[, count] rows written by write_tail_csv. Errors: ParseError.
TailEstimate read_tail_csv(std::istream& in, std::size_t dim = 1);

}  // namespace pmatch
