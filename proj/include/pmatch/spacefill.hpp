#pragma once

#include "pmatch/pointproc.hpp"
#include "pmatch/schemes.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pmatch {

/// Hilbert curve through the cube {0, ..., 2^order - 1}^d, computed on demand.
///
/// Orientation follows Skilling's transpose construction: for d = 2, order 1 the
/// path is (0,0), (0,1), (1,1), (1,0), the first coordinate being the most
/// significant in each index digit.
class CurvePath {
  public:
    CurvePath(int d, int order);

    [[nodiscard]] int dim() const noexcept { return d_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] std::uint64_t size() const noexcept { return std::uint64_t{1} << (d_ * order_); }
    [[nodiscard]] std::int64_t side() const noexcept { return std::int64_t{1} << order_; }

    [[nodiscard]] std::vector<std::int64_t> cell(std::uint64_t t) const;
    /// Inverse of cell(); errors: RangeOverflow outside the cube.
    [[nodiscard]] std::uint64_t index_of(std::span<const std::int64_t> x) const;

  private:
    int d_;
    int order_;
};

/// Errors: UnsupportedDimension unless d = 2 (order <= 12) or d = 3 (order <= 8).
CurvePath hilbert_path(int d, int order);

struct DistortionOptions {
    std::uint64_t exhaustive_cells = 4096;  // all pairs up to this path length
    std::uint64_t max_gap = 256;            // beyond it: all pairs with index gap <= max_gap
    std::uint64_t samples = 200000;         // plus random pairs with larger gaps
    std::uint64_t seed = 1;
};

/// max ||x - y||^d / |t_x - t_y| over cell pairs; 0 for a single cell.
double curve_distortion(const CurvePath& path, const DistortionOptions& options = {});

struct LiftResult {
    PointConfiguration config;
    Matching matching;
    std::int64_t offset = 0;  // random shift of the path index
    std::vector<double> shift;  // random unit-cube shift of the embedding
};

/// Moves each 1-d point x to a uniform point of the unit cube at path cell
/// floor(x) + size/2 + offset, with offset uniform in [-size/8, size/8).
/// Families carry over unchanged. Errors: RangeOverflow when |floor x| exceeds size/8.
LiftResult lift_matching(const Matching& matching, const PointConfiguration& config, const CurvePath& path,
                         std::uint64_t seed);

/// Largest |floor x - floor y| over pairs inside one family.
std::int64_t max_family_index_gap(const Matching& matching, const PointConfiguration& config);

}  // namespace pmatch
