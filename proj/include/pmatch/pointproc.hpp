#pragma once

#include "pmatch/rules.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace pmatch {

/// Axis-aligned box [lo, hi] in R^d; an interval when d = 1.
struct Window {
    std::vector<double> lo;
    std::vector<double> hi;

    static Window interval(double a, double b) { return Window{{a}, {b}}; }
    static Window cube(std::size_t d, double a, double b) {
        return Window{std::vector<double>(d, a), std::vector<double>(d, b)};
    }
    [[nodiscard]] std::size_t dim() const noexcept { return lo.size(); }
    [[nodiscard]] double volume() const;
    [[nodiscard]] bool contains(std::span<const double> x) const;
};

/// Finite window of coloured points; colours are 0-based. Sorted by first coordinate.
class PointConfiguration {
  public:
    PointConfiguration() = default;
    explicit PointConfiguration(Window window) : window_(std::move(window)) {}

    void add(std::span<const double> position, int colour);
    void add(double x, int colour) { add(std::span<const double>(&x, 1), colour); }
    void sort_by_position();
    void reserve(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return colours_.size(); }
    [[nodiscard]] bool empty() const noexcept { return colours_.empty(); }
    [[nodiscard]] std::size_t dim() const noexcept { return window_.dim(); }
    [[nodiscard]] const Window& window() const noexcept { return window_; }
    [[nodiscard]] std::span<const double> position(std::size_t i) const {
        return {coords_.data() + i * dim(), dim()};
    }
    [[nodiscard]] double x(std::size_t i) const { return coords_[i * dim()]; }
    [[nodiscard]] int colour(std::size_t i) const { return colours_[i]; }
    [[nodiscard]] const std::vector<int>& colours() const noexcept { return colours_; }

    /// Copy with every coordinate (and the window) shifted by `offset`.
    [[nodiscard]] PointConfiguration translated(double offset) const;

  private:
    Window window_;
    std::vector<double> coords_;
    std::vector<int> colours_;
};

/// Independent seed for replica `index` of a run with base seed `base`.
std::uint64_t replica_seed(std::uint64_t base, std::uint64_t index);

/// Superposed Poisson process on [-B - margin, B + margin]: Exp(sum lambda) gaps,
/// colours i.i.d. with probabilities lambda_i / sum lambda.
PointConfiguration sample_poisson_1d(const MatchingRule& rule, double B, double margin, std::uint64_t seed);

/// Poisson sampling in a d-dimensional box.
PointConfiguration sample_poisson_box(const MatchingRule& rule, const Window& box, std::uint64_t seed);

/// One occupied integer site of the discretized process.
struct Site {
    std::int64_t index = 0;
    int colour = 0;
    double u = 0.0;    // ceil(gap) - gap, in [0, 1)
    double gap = 0.0;  // rescaled gap to the previous point (window edge for the first)
    std::size_t point = 0;
};

struct DiscreteConfiguration {
    std::vector<Site> sites;
    double origin_offset = 0.0;  // original position of site index 0
    double scale = 1.0;          // gaps were multiplied by this before rounding

    [[nodiscard]] std::size_t size() const noexcept { return sites.size(); }
};

/// Gap-ceiling discretization anchored at the leftmost point (index 0).
/// With scale = sum lambda the rescaled gaps are Exp(1). Errors: EmptyConfiguration.
DiscreteConfiguration discretize(const PointConfiguration& config, double scale = 1.0);

/// Per-site auxiliary randomness derived deterministically from u.
///
/// The bits of u seed a splitmix64 counter stream; stream 0 gives the stage G
/// (1 + position of the first set bit, so geometric(1/2)), streams 2s-1 and 2s
/// give the stage-s coins epsilon and zeta, and high streams give uniforms.
class MarkStreams {
  public:
    explicit MarkStreams(double u);

    [[nodiscard]] int G() const noexcept { return g_; }
    [[nodiscard]] bool epsilon(int stage) const noexcept { return (stream(2 * static_cast<std::uint64_t>(stage) - 1) & 1u) != 0; }
    [[nodiscard]] bool zeta(int stage) const noexcept { return (stream(2 * static_cast<std::uint64_t>(stage)) & 1u) != 0; }
    /// 53-bit uniform integer for auxiliary choices (thinning), tagged by purpose.
    [[nodiscard]] std::uint64_t uniform53(std::uint64_t tag) const noexcept { return stream((1ull << 40) + tag) >> 11; }

  private:
    [[nodiscard]] std::uint64_t stream(std::uint64_t id) const noexcept;
    std::uint64_t key_;
    int g_;
};

MarkStreams derive_marks(const Site& site);

/// 1{rescaled gap >= log 2}: a fair coin when gaps are Exp(1).
std::vector<bool> epsilon_log2(const DiscreteConfiguration& discrete);

/// CSV with columns x1..xd, colour (1-based).
void write_points_csv(std::ostream& out, const PointConfiguration& config);

}  // namespace pmatch
