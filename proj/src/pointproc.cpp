#include "pmatch/pointproc.hpp"

#include "pmatch/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

namespace pmatch {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> colour_cdf(const MatchingRule& rule) {
    const auto lambda = rule.lambda_double();
    const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    std::vector<double> cdf(lambda.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        acc += lambda[i] / total;
        cdf[i] = acc;
    }
    cdf.back() = 1.0;
    return cdf;
}

int draw_colour(const std::vector<double>& cdf, double u) {
    return static_cast<int>(std::upper_bound(cdf.begin(), cdf.end() - 1, u) - cdf.begin());
}

}  // namespace

double Window::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
    return v;
}

bool Window::contains(std::span<const double> x) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

void PointConfiguration::add(std::span<const double> position, int colour) {
    if (position.size() != dim()) fail(Errc::DimensionMismatch, "point dimension does not match window");
    coords_.insert(coords_.end(), position.begin(), position.end());
    colours_.push_back(colour);
}

void PointConfiguration::reserve(std::size_t n) {
    coords_.reserve(n * dim());
    colours_.reserve(n);
}

void PointConfiguration::sort_by_position() {
    const std::size_t d = dim();
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(coords_.begin() + a * d, coords_.begin() + (a + 1) * d,
                                            coords_.begin() + b * d, coords_.begin() + (b + 1) * d);
    });
    std::vector<double> coords;
    std::vector<int> colours;
    coords.reserve(coords_.size());
    colours.reserve(colours_.size());
    for (auto i : order) {
        coords.insert(coords.end(), coords_.begin() + i * d, coords_.begin() + (i + 1) * d);
        colours.push_back(colours_[i]);
    }
    coords_ = std::move(coords);
    colours_ = std::move(colours);
}

PointConfiguration PointConfiguration::translated(double offset) const {
    PointConfiguration out = *this;
    for (auto& c : out.coords_) c += offset;
    for (auto& v : out.window_.lo) v += offset;
    for (auto& v : out.window_.hi) v += offset;
    return out;
}

std::uint64_t replica_seed(std::uint64_t base, std::uint64_t index) { return splitmix64(base ^ splitmix64(index)); }

PointConfiguration sample_poisson_1d(const MatchingRule& rule, double B, double margin, std::uint64_t seed) {
    const double lo = -B - margin;
    const double hi = B + margin;
    PointConfiguration config(Window::interval(lo, hi));
    const double rate = to_double(rule.total_intensity());
    const auto cdf = colour_cdf(rule);
    std::mt19937_64 rng(seed);
    config.reserve(static_cast<std::size_t>(rate * (hi - lo) * 1.05) + 16);
    double x = lo;
    for (;;) {
        x += -std::log1p(-uniform01(rng)) / rate;
        if (x > hi) break;
        config.add(x, draw_colour(cdf, uniform01(rng)));
    }
    return config;
}

PointConfiguration sample_poisson_box(const MatchingRule& rule, const Window& box, std::uint64_t seed) {
    PointConfiguration config(box);
    const double mean = to_double(rule.total_intensity()) * box.volume();
    if (mean <= 0.0) return config;
    const auto cdf = colour_cdf(rule);
    std::mt19937_64 rng(seed);
    std::poisson_distribution<long> count_dist(mean);
    const long n = count_dist(rng);
    config.reserve(static_cast<std::size_t>(n));
    std::vector<double> p(box.dim());
    for (long m = 0; m < n; ++m) {
        for (std::size_t i = 0; i < box.dim(); ++i) p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * uniform01(rng);
        config.add(p, draw_colour(cdf, uniform01(rng)));
    }
    config.sort_by_position();
    return config;
}

DiscreteConfiguration discretize(const PointConfiguration& config, double scale) {
    if (config.empty()) fail(Errc::EmptyConfiguration, "cannot discretize an empty configuration");
    if (config.dim() != 1) fail(Errc::DimensionMismatch, "discretization needs a 1-d configuration");
    DiscreteConfiguration out;
    out.scale = scale;
    out.origin_offset = config.x(0);
    out.sites.reserve(config.size());
    std::int64_t index = 0;
    double previous = config.window().lo[0];
    for (std::size_t n = 0; n < config.size(); ++n) {
        const double gap = (config.x(n) - previous) * scale;
        const double rounded = std::ceil(gap);
        if (n > 0) index += std::max<std::int64_t>(1, static_cast<std::int64_t>(rounded));
        Site s;
        s.index = index;
        s.colour = config.colour(n);
        s.gap = gap;
        s.u = rounded - gap;
        s.point = n;
        out.sites.push_back(s);
        previous = config.x(n);
    }
    return out;
}

MarkStreams::MarkStreams(double u) : key_(splitmix64(std::bit_cast<std::uint64_t>(u))) {
    const std::uint64_t bits = stream(0);
    g_ = bits == 0 ? 65 : 1 + std::countr_zero(bits);
}

std::uint64_t MarkStreams::stream(std::uint64_t id) const noexcept {
    return splitmix64(key_ ^ splitmix64(id * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
}

MarkStreams derive_marks(const Site& site) { return MarkStreams(site.u); }

std::vector<bool> epsilon_log2(const DiscreteConfiguration& discrete) {
    static const double threshold = std::log(2.0);
    std::vector<bool> out(discrete.size());
    for (std::size_t n = 0; n < discrete.size(); ++n) out[n] = discrete.sites[n].gap >= threshold;
    return out;
}

void write_points_csv(std::ostream& out, const PointConfiguration& config) {
    for (std::size_t i = 0; i < config.dim(); ++i) out << "x" << (i + 1) << ",";
    out << "colour\n";
    out.precision(17);
    for (std::size_t n = 0; n < config.size(); ++n) {
        for (double c : config.position(n)) out << c << ",";
        out << (config.colour(n) + 1) << "\n";
    }
}

}  // namespace pmatch
