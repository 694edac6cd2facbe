#include "pmatch/stats.hpp"

#include "pmatch/error.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace pmatch {

TailEstimate TailEstimate::from_survival(std::vector<double> radii, std::vector<double> survival, std::size_t dim) {
    if (radii.size() != survival.size()) fail(Errc::DimensionMismatch, "radii and survival differ in length");
    TailEstimate t;
    t.radii = std::move(radii);
    t.survival = std::move(survival);
    t.dim = dim;
    return t;
}

void TailEstimate::merge(const TailEstimate& other) {
    if (radii.empty() && n_points == 0) {
        *this = other;
        return;
    }
    if (radii != other.radii || dim != other.dim || exceed.size() != other.exceed.size())
        fail(Errc::DimensionMismatch, "merging tails on different grids");
    for (std::size_t i = 0; i < exceed.size(); ++i) exceed[i] += other.exceed[i];
    n_points += other.n_points;
    censored += other.censored;
    if (families && other.families) families->insert(families->end(), other.families->begin(), other.families->end());
    else families.reset();
    for (std::size_t i = 0; i < exceed.size(); ++i)
        survival[i] = n_points == 0 ? 0.0 : static_cast<double>(exceed[i]) / static_cast<double>(n_points);
}

std::vector<double> default_radii(double r_max) {
    std::vector<double> r;
    for (int i = 0; i <= 200 && i * 0.25 <= r_max; ++i) r.push_back(i * 0.25);
    for (int k = 0;; ++k) {
        const double v = 50.0 * std::pow(10.0, k / 40.0);
        if (v > r_max) break;
        if (v > r.back() + 1e-9) r.push_back(v);
    }
    return r;
}

double family_diameter(const Family& family, const PointConfiguration& config) {
    double best = 0.0;
    const auto& pts = family.points;
    if (config.dim() == 1) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (auto p : pts) {
            lo = std::min(lo, config.x(p));
            hi = std::max(hi, config.x(p));
        }
        return pts.empty() ? 0.0 : hi - lo;
    }
    for (std::size_t a = 0; a < pts.size(); ++a) {
        const auto pa = config.position(pts[a]);
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            const auto pb = config.position(pts[b]);
            double sq = 0.0;
            for (std::size_t i = 0; i < pa.size(); ++i) sq += (pa[i] - pb[i]) * (pa[i] - pb[i]);
            best = std::max(best, sq);
        }
    }
    return std::sqrt(best);
}

TailEstimate empirical_tail(const Matching& matching, const PointConfiguration& config, const TailOptions& options) {
    TailEstimate tail;
    tail.radii = options.radii.empty() ? default_radii(1e6) : options.radii;
    tail.dim = config.dim();
    tail.exceed.assign(tail.radii.size(), 0);
    if (options.keep_families) tail.families.emplace();
    auto in_core = [&](std::size_t p) {
        return options.core_mask ? (*options.core_mask)[p] : options.core.contains(config.position(p));
    };
    // diff[i] accumulates points whose diameter exceeds radii[0..i-1] only
    std::vector<std::int64_t> diff(tail.radii.size() + 1, 0);

    for (const auto& f : matching.families) {
        std::uint32_t inside = 0;
        bool all_inside = true;
        for (auto p : f.points) {
            if (in_core(p)) ++inside;
            else all_inside = false;
        }
        if (inside == 0) continue;
        if (options.require_family_inside && !all_inside) continue;
        const double diam = family_diameter(f, config);
        // radii strictly below diam are exceeded
        const auto k = static_cast<std::size_t>(std::lower_bound(tail.radii.begin(), tail.radii.end(), diam) -
                                                tail.radii.begin());
        diff[0] += inside;
        diff[k] -= inside;
        tail.n_points += inside;
        if (tail.families) tail.families->emplace_back(diam, inside);
    }
    if (!options.require_family_inside) {
        for (auto p : matching.unmatched) {
            if (!in_core(p)) continue;
            if (options.censor == CensorPolicy::Error)
                fail(Errc::UnmatchedCorePoint, "core-window point is unmatched; enlarge the margin");
            ++tail.censored;
            ++tail.n_points;
            diff[0] += 1;
            diff[tail.radii.size()] -= 1;
        }
    }
    std::int64_t running = 0;
    for (std::size_t i = 0; i < tail.radii.size(); ++i) {
        running += diff[i];
        tail.exceed[i] = static_cast<std::uint64_t>(running);
    }
    tail.survival.resize(tail.radii.size());
    for (std::size_t i = 0; i < tail.radii.size(); ++i)
        tail.survival[i] =
            tail.n_points == 0 ? 0.0 : static_cast<double>(tail.exceed[i]) / static_cast<double>(tail.n_points);
    return tail;
}

TailEstimate empirical_tail(const Matching& matching, const PointConfiguration& config, const Window& core) {
    TailOptions options;
    options.core = core;
    return empirical_tail(matching, config, options);
}

std::string_view to_string(FitModel model) { return model == FitModel::Power ? "power" : "exponential"; }

namespace {

FitReport regress(const TailEstimate& tail, double r_min, double r_max, FitModel model) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < tail.radii.size(); ++i) {
        const double r = tail.radii[i];
        if (r < r_min || r > r_max || tail.survival[i] <= 0.0) continue;
        if (model == FitModel::Power && r <= 0.0) continue;
        xs.push_back(model == FitModel::Power ? std::log(r) : std::pow(r, static_cast<double>(tail.dim)));
        ys.push_back(std::log(tail.survival[i]));
    }
    if (xs.size() < 10)
        fail(Errc::InsufficientData, "fit needs at least 10 grid points with positive survival, got " +
                                         std::to_string(xs.size()));
    const auto n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 0.0) fail(Errc::InsufficientData, "fit range has no spread");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (intercept + slope * xs[i]);
        sse += e * e;
    }
    FitReport f;
    f.model = model;
    f.parameter = -slope;
    f.r_min = r_min;
    f.r_max = r_max;
    f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    f.stderr_ = xs.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
    f.n_grid = xs.size();
    f.n_points = tail.n_points;
    return f;
}

}  // namespace

FitReport fit_power_exponent(const TailEstimate& tail, double r_min, double r_max) {
    return regress(tail, r_min, r_max, FitModel::Power);
}

FitReport fit_exponential_rate(const TailEstimate& tail, double r_min, double r_max) {
    return regress(tail, r_min, r_max, FitModel::Exponential);
}

double moment_value(const TailEstimate& tail, double p) {
    if (p == 0.0) return 1.0;
    if (tail.censored > 0) return std::numeric_limits<double>::infinity();
    if (tail.families) {
        double num = 0.0, den = 0.0;
        for (auto [diam, w] : *tail.families) {
            num += w * std::pow(diam, p);
            den += w;
        }
        return den == 0.0 ? 0.0 : num / den;
    }
    // E X^p = integral of p r^(p-1) S(r); bounded above using S at each cell's left end.
    if (tail.radii.empty()) return 0.0;
    double acc = std::pow(tail.radii.front(), p);
    for (std::size_t i = 0; i + 1 < tail.radii.size(); ++i)
        acc += (std::pow(tail.radii[i + 1], p) - std::pow(tail.radii[i], p)) * tail.survival[i];
    return acc;
}

MomentReport moment_estimate(const TailEstimate& tail, double p, std::span<const TailEstimate> nested) {
    MomentReport m;
    m.estimate = moment_value(tail, p);
    for (const auto& t : nested) m.growth.push_back(moment_value(t, p));
    m.monotone_growth = m.growth.size() >= 2;
    for (std::size_t i = 1; i < m.growth.size(); ++i)
        if (!(m.growth[i] > m.growth[i - 1])) m.monotone_growth = false;
    return m;
}

void write_tail_csv(std::ostream& out, const TailEstimate& tail) {
    out << "r,survival,count\n";
    out.precision(17);
    for (std::size_t i = 0; i < tail.radii.size(); ++i) {
        out << tail.radii[i] << "," << tail.survival[i] << ",";
        if (i < tail.exceed.size()) out << tail.exceed[i];
        out << "\n";
    }
}

TailEstimate read_tail_csv(std::istream& in, std::size_t dim) {
    std::string line;
    if (!std::getline(in, line)) fail(Errc::ParseError, "empty tail CSV");
    std::vector<double> radii, survival;
    std::vector<std::uint64_t> counts;
    bool have_counts = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string a, b, c;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
            fail(Errc::ParseError, "bad tail CSV row: " + line);
        std::getline(row, c, ',');
        try {
            radii.push_back(std::stod(a));
            survival.push_back(std::stod(b));
            if (c.empty()) have_counts = false;
            else counts.push_back(std::stoull(c));
        } catch (const std::exception&) {
            fail(Errc::ParseError, "bad tail CSV row: " + line);
        }
    }
    auto tail = TailEstimate::from_survival(std::move(radii), std::move(survival), dim);
    if (have_counts) tail.exceed = std::move(counts);
    return tail;
}

}  // namespace pmatch
