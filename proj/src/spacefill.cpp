#include "pmatch/spacefill.hpp"

#include "pmatch/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace pmatch {

namespace {

using Coords = std::array<std::uint64_t, 3>;

// Skilling's transpose form: bit b of the index digit at level l lives in X[b].
void transpose_to_axes(Coords& x, int bits, int n) {
    const std::uint64_t N = std::uint64_t{2} << (bits - 1);
    std::uint64_t t = x[n - 1] >> 1;
    for (int i = n - 1; i > 0; --i) x[i] ^= x[i - 1];
    x[0] ^= t;
    for (std::uint64_t Q = 2; Q != N; Q <<= 1) {
        const std::uint64_t P = Q - 1;
        for (int i = n - 1; i >= 0; --i) {
            if (x[i] & Q) {
                x[0] ^= P;
            } else {
                t = (x[0] ^ x[i]) & P;
                x[0] ^= t;
                x[i] ^= t;
            }
        }
    }
}

void axes_to_transpose(Coords& x, int bits, int n) {
    const std::uint64_t M = std::uint64_t{1} << (bits - 1);
    for (std::uint64_t Q = M; Q > 1; Q >>= 1) {
        const std::uint64_t P = Q - 1;
        for (int i = 0; i < n; ++i) {
            if (x[i] & Q) {
                x[0] ^= P;
            } else {
                const std::uint64_t t = (x[0] ^ x[i]) & P;
                x[0] ^= t;
                x[i] ^= t;
            }
        }
    }
    for (int i = 1; i < n; ++i) x[i] ^= x[i - 1];
    std::uint64_t t = 0;
    for (std::uint64_t Q = M; Q > 1; Q >>= 1)
        if (x[n - 1] & Q) t ^= Q - 1;
    for (int i = 0; i < n; ++i) x[i] ^= t;
}

struct CellTable {
    int d;
    std::vector<std::int64_t> flat;

    explicit CellTable(const CurvePath& path) : d(path.dim()) {
        flat.reserve(path.size() * static_cast<std::size_t>(d));
        for (std::uint64_t t = 0; t < path.size(); ++t) {
            const auto c = path.cell(t);
            flat.insert(flat.end(), c.begin(), c.end());
        }
    }

    [[nodiscard]] double ratio(std::uint64_t s, std::uint64_t t) const {
        double sq = 0.0;
        for (int i = 0; i < d; ++i) {
            const double diff = static_cast<double>(flat[s * d + i] - flat[t * d + i]);
            sq += diff * diff;
        }
        const double norm_d = d == 2 ? sq : sq * std::sqrt(sq);
        return norm_d / static_cast<double>(t > s ? t - s : s - t);
    }
};

}  // namespace

CurvePath::CurvePath(int d, int order) : d_(d), order_(order) {
    if (!((d == 2 && order >= 0 && order <= 12) || (d == 3 && order >= 0 && order <= 8)))
        fail(Errc::UnsupportedDimension, "Hilbert paths support d = 2 (order <= 12) and d = 3 (order <= 8)");
}

CurvePath hilbert_path(int d, int order) { return CurvePath(d, order); }

std::vector<std::int64_t> CurvePath::cell(std::uint64_t t) const {
    Coords x{0, 0, 0};
    for (int level = order_ - 1; level >= 0; --level)
        for (int i = 0; i < d_; ++i) {
            const int shift = level * d_ + (d_ - 1 - i);
            x[i] |= ((t >> shift) & 1u) << level;
        }
    transpose_to_axes(x, order_, d_);
    return std::vector<std::int64_t>(x.begin(), x.begin() + d_);
}

std::uint64_t CurvePath::index_of(std::span<const std::int64_t> cell) const {
    if (cell.size() != static_cast<std::size_t>(d_)) fail(Errc::DimensionMismatch, "cell has wrong dimension");
    Coords x{0, 0, 0};
    for (int i = 0; i < d_; ++i) {
        if (cell[i] < 0 || cell[i] >= side()) fail(Errc::RangeOverflow, "cell outside the curve's cube");
        x[i] = static_cast<std::uint64_t>(cell[i]);
    }
    axes_to_transpose(x, order_, d_);
    std::uint64_t t = 0;
    for (int level = order_ - 1; level >= 0; --level)
        for (int i = 0; i < d_; ++i) t = (t << 1) | ((x[i] >> level) & 1u);
    return t;
}

double curve_distortion(const CurvePath& path, const DistortionOptions& options) {
    const std::uint64_t n = path.size();
    double best = 0.0;
    const CellTable table(path);
    if (n <= options.exhaustive_cells) {
        for (std::uint64_t s = 0; s < n; ++s)
            for (std::uint64_t t = s + 1; t < n; ++t) best = std::max(best, table.ratio(s, t));
        return best;
    }
    for (std::uint64_t s = 0; s < n; ++s)
        for (std::uint64_t g = 1; g <= options.max_gap && s + g < n; ++g) best = std::max(best, table.ratio(s, s + g));
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (std::uint64_t m = 0; m < options.samples; ++m) {
        const auto s = pick(rng);
        const auto t = pick(rng);
        if (s != t) best = std::max(best, table.ratio(s, t));
    }
    return best;
}

LiftResult lift_matching(const Matching& matching, const PointConfiguration& config, const CurvePath& path,
                         std::uint64_t seed) {
    if (config.dim() != 1) fail(Errc::DimensionMismatch, "lift_matching needs a 1-d configuration");
    const auto n = static_cast<std::int64_t>(path.size());
    const std::int64_t eighth = n / 8;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> offset_dist(-eighth, eighth - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    LiftResult out;
    out.offset = offset_dist(rng);
    const auto d = static_cast<std::size_t>(path.dim());
    out.shift.resize(d);
    for (auto& s : out.shift) s = unit(rng);
    out.config = PointConfiguration(Window::cube(d, 0.0, static_cast<double>(path.side()) + 1.0));
    out.config.reserve(config.size());

    std::vector<double> p(d);
    for (std::size_t m = 0; m < config.size(); ++m) {
        const double fl = std::floor(config.x(m));
        if (std::abs(fl) > static_cast<double>(eighth))
            fail(Errc::RangeOverflow, "window too large for the curve order");
        const auto t = static_cast<std::uint64_t>(static_cast<std::int64_t>(fl) + n / 2 + out.offset);
        const auto cell = path.cell(t);
        for (std::size_t i = 0; i < d; ++i) p[i] = static_cast<double>(cell[i]) + unit(rng) + out.shift[i];
        out.config.add(p, config.colour(m));
    }
    out.matching = matching;
    return out;
}

std::int64_t max_family_index_gap(const Matching& matching, const PointConfiguration& config) {
    std::int64_t best = 0;
    for (const auto& f : matching.families) {
        if (f.points.empty()) continue;
        auto [lo, hi] = std::minmax_element(f.points.begin(), f.points.end(),
                                            [&](std::size_t a, std::size_t b) { return config.x(a) < config.x(b); });
        best = std::max(best, static_cast<std::int64_t>(std::floor(config.x(*hi)) - std::floor(config.x(*lo))));
    }
    return best;
}

}  // namespace pmatch
