#include "pmatch/lattice.hpp"

#include "pmatch/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <numeric>

namespace pmatch {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) fail(Errc::RangeOverflow, "integer overflow in lattice arithmetic");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_sub_overflow(a, b, &r)) fail(Errc::RangeOverflow, "integer overflow in lattice arithmetic");
    return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t mod_positive(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// row_a -= f * row_b
void axpy(IntVector& row_a, const IntVector& row_b, std::int64_t f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < row_a.size(); ++j) row_a[j] = checked_sub(row_a[j], checked_mul(f, row_b[j]));
}

IntMatrix identity(std::size_t n) {
    IntMatrix m(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

}  // namespace

IntMatrix type_matrix(const std::vector<FamilyType>& types) {
    IntMatrix m;
    m.reserve(types.size());
    for (const auto& t : types) m.emplace_back(t.counts.begin(), t.counts.end());
    return m;
}

LatticeBasis hermite_basis(const IntMatrix& rows, std::size_t q) {
    IntMatrix a = rows;
    const std::size_t k = a.size();
    IntMatrix u = identity(k);
    LatticeBasis out;
    out.q = q;
    std::size_t r = 0;
    for (std::size_t c = 0; c < q && r < k; ++c) {
        for (;;) {
            // smallest non-zero magnitude in column c among rows >= r moves to row r
            std::size_t best = k;
            for (std::size_t i = r; i < k; ++i)
                if (a[i][c] != 0 && (best == k || std::llabs(a[i][c]) < std::llabs(a[best][c]))) best = i;
            if (best == k) break;
            std::swap(a[r], a[best]);
            std::swap(u[r], u[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < k; ++i) {
                if (a[i][c] == 0) continue;
                const std::int64_t f = a[i][c] / a[r][c];
                axpy(a[i], a[r], f);
                axpy(u[i], u[r], f);
                if (a[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0) {
            for (auto& v : a[r]) v = -v;
            for (auto& v : u[r]) v = -v;
        }
        for (std::size_t i = 0; i < r; ++i) {
            const std::int64_t f = floor_div(a[i][c], a[r][c]);
            axpy(a[i], a[r], f);
            axpy(u[i], u[r], f);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.H.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(r));
    out.transform = std::move(u);
    return out;
}

LatticeBasis hermite_basis(const MatchingRule& rule) { return hermite_basis(type_matrix(rule.types()), rule.q()); }

bool is_full_lattice(const MatchingRule& rule) {
    const auto basis = hermite_basis(rule);
    if (basis.rank != rule.q()) return false;
    for (std::size_t i = 0; i < basis.rank; ++i)
        for (std::size_t j = 0; j < basis.q; ++j)
            if (basis.H[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

std::optional<IntVector> solve_in_basis(const LatticeBasis& basis, std::span<const std::int64_t> x) {
    if (x.size() != basis.q) fail(Errc::DimensionMismatch, "lattice query has wrong length");
    IntVector residual(x.begin(), x.end());
    IntVector coeff(basis.rank, 0);
    for (std::size_t r = 0; r < basis.rank; ++r) {
        const std::size_t p = basis.pivots[r];
        const std::int64_t h = basis.H[r][p];
        if (residual[p] % h != 0) return std::nullopt;
        coeff[r] = residual[p] / h;
        axpy(residual, basis.H[r], coeff[r]);
    }
    if (std::any_of(residual.begin(), residual.end(), [](std::int64_t v) { return v != 0; })) return std::nullopt;
    return coeff;
}

bool in_lattice(std::span<const std::int64_t> x, const LatticeBasis& basis) {
    return solve_in_basis(basis, x).has_value();
}

bool in_lattice(std::span<const std::int64_t> x, const MatchingRule& rule) {
    return in_lattice(x, hermite_basis(rule));
}

std::size_t lattice_rank(const MatchingRule& rule) { return hermite_basis(rule).rank; }

QuotientGroup::QuotientGroup(IntVector invariant_factors, IntMatrix column_transform)
    : factors_(std::move(invariant_factors)), transform_(std::move(column_transform)) {
    for (auto d : factors_) order_ = checked_mul(order_, d);
    const std::size_t q = factors_.size();
    step_.resize(static_cast<std::size_t>(order_) * q);
    // decode each index into residues, add row i of Q, re-encode
    IntVector residues(q);
    for (std::int64_t idx = 0; idx < order_; ++idx) {
        std::int64_t rest = idx;
        for (std::size_t t = q; t-- > 0;) {
            residues[t] = rest % factors_[t];
            rest /= factors_[t];
        }
        for (std::size_t colour = 0; colour < q; ++colour) {
            IntVector next = residues;
            for (std::size_t t = 0; t < q; ++t) next[t] = mod_positive(next[t] + transform_[colour][t], factors_[t]);
            step_[static_cast<std::size_t>(idx) * q + colour] = index_of(next);
        }
    }
}

IntVector QuotientGroup::coset_map(std::span<const std::int64_t> x) const {
    const std::size_t q = factors_.size();
    if (x.size() != q) fail(Errc::DimensionMismatch, "coset query has wrong length");
    IntVector out(q, 0);
    for (std::size_t t = 0; t < q; ++t) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < q; ++i) acc = mod_positive(acc + checked_mul(mod_positive(x[i], factors_[t]), mod_positive(transform_[i][t], factors_[t])), factors_[t]);
        out[t] = acc;
    }
    return out;
}

std::int64_t QuotientGroup::index_of(const IntVector& residues) const {
    std::int64_t idx = 0;
    for (std::size_t t = 0; t < factors_.size(); ++t) idx = idx * factors_[t] + residues[t];
    return idx;
}

std::int64_t QuotientGroup::coset_index(std::span<const std::int64_t> x) const { return index_of(coset_map(x)); }

QuotientGroup quotient_group(const IntMatrix& rows, std::size_t q) {
    IntMatrix a = rows;
    const std::size_t k = a.size();
    IntMatrix cols = identity(q);  // Q, acted on by column operations
    auto col_axpy = [&](std::size_t target, std::size_t source, std::int64_t f) {
        if (f == 0) return;
        for (std::size_t i = 0; i < k; ++i) a[i][target] = checked_sub(a[i][target], checked_mul(f, a[i][source]));
        for (std::size_t i = 0; i < q; ++i) cols[i][target] = checked_sub(cols[i][target], checked_mul(f, cols[i][source]));
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        for (std::size_t i = 0; i < k; ++i) std::swap(a[i][x], a[i][y]);
        for (std::size_t i = 0; i < q; ++i) std::swap(cols[i][x], cols[i][y]);
    };
    IntVector factors;
    const std::size_t n = std::min(k, q);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            std::size_t bi = k, bj = q;
            for (std::size_t i = t; i < k; ++i)
                for (std::size_t j = t; j < q; ++j)
                    if (a[i][j] != 0 && (bi == k || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == k) break;
            std::swap(a[t], a[bi]);
            col_swap(t, bj);
            bool dirty = false;
            for (std::size_t i = t + 1; i < k; ++i) {
                axpy(a[i], a[t], a[i][t] / a[t][t]);
                dirty = dirty || a[i][t] != 0;
            }
            for (std::size_t j = t + 1; j < q; ++j) {
                col_axpy(j, t, a[t][j] / a[t][t]);
                dirty = dirty || a[t][j] != 0;
            }
            if (dirty) continue;
            // divisibility: fold an offending row into row t and retry
            bool divisible = true;
            for (std::size_t i = t + 1; i < k && divisible; ++i)
                for (std::size_t j = t + 1; j < q; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        axpy(a[t], a[i], -1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (a[t][t] == 0) break;
        factors.push_back(std::llabs(a[t][t]));
    }
    if (factors.size() < q)
        fail(Errc::RankDeficient, "lattice has rank " + std::to_string(factors.size()) + " < " + std::to_string(q) +
                                      "; the quotient group is infinite");
    return QuotientGroup(std::move(factors), std::move(cols));
}

QuotientGroup quotient_group(const MatchingRule& rule) { return quotient_group(type_matrix(rule.types()), rule.q()); }

Matchability::Matchability(const MatchingRule& rule) : Matchability(rule.types()) {}

Matchability::Matchability(std::vector<FamilyType> types) : types_(std::move(types)) {
    q_ = types_.empty() ? 0 : types_.front().colours();
    suffix_support_.assign(types_.size() + 1, std::vector<bool>(q_, false));
    for (std::size_t j = types_.size(); j-- > 0;)
        for (std::size_t i = 0; i < q_; ++i) suffix_support_[j][i] = suffix_support_[j + 1][i] || types_[j][i] > 0;
}

std::size_t Matchability::KeyHash::operator()(const std::vector<int>& key) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : key) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

bool Matchability::feasible(std::size_t first, std::vector<int>& y) const {
    bool zero = true;
    for (std::size_t i = 0; i < q_; ++i) {
        if (y[i] < 0) return false;
        if (y[i] > 0) {
            zero = false;
            if (!suffix_support_[first][i]) return false;
        }
    }
    if (zero) return true;
    if (first == types_.size()) return false;

    y.push_back(static_cast<int>(first));
    {
        std::shared_lock lock(mutex_);
        if (auto it = memo_.find(y); it != memo_.end()) {
            const bool cached = it->second;
            y.pop_back();
            return cached;
        }
    }
    y.pop_back();

    const auto& v = types_[first];
    int bound = -1;
    for (std::size_t i = 0; i < q_; ++i)
        if (v[i] > 0) bound = bound < 0 ? y[i] / v[i] : std::min(bound, y[i] / v[i]);
    bool ok = false;
    std::vector<int> rest = y;
    for (int n = 0; n <= bound && !ok; ++n) {
        ok = feasible(first + 1, rest);
        for (std::size_t i = 0; i < q_; ++i) rest[i] -= v[i];
    }
    std::vector<int> key = y;
    key.push_back(static_cast<int>(first));
    std::unique_lock lock(mutex_);
    memo_.emplace(std::move(key), ok);
    return ok;
}

bool Matchability::is_matchable(std::span<const int> x) const {
    if (x.size() != q_) fail(Errc::DimensionMismatch, "matchability query has wrong length");
    std::vector<int> y(x.begin(), x.end());
    y.reserve(q_ + 1);
    return feasible(0, y);
}

std::optional<MatchabilityWitness> Matchability::witness(std::span<const int> x) const {
    if (!is_matchable(x)) return std::nullopt;
    std::vector<int> y(x.begin(), x.end());
    MatchabilityWitness w;
    w.n.assign(types_.size(), 0);
    for (std::size_t j = 0; j < types_.size(); ++j) {
        const auto& v = types_[j];
        std::vector<int> rest = y;
        for (std::int64_t n = 0;; ++n) {
            std::vector<int> probe = rest;
            if (feasible(j + 1, probe)) {
                w.n[j] = n;
                y = rest;
                break;
            }
            for (std::size_t i = 0; i < q_; ++i) rest[i] -= v[i];
        }
    }
    return w;
}

void Matchability::clear() {
    std::unique_lock lock(mutex_);
    memo_.clear();
}

std::size_t Matchability::memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
}

std::optional<MatchabilityWitness> matchable(std::span<const int> x, const MatchingRule& rule) {
    return Matchability(rule).witness(x);
}

IntMatrix relation_basis(const MatchingRule& rule) {
    const auto basis = hermite_basis(rule);
    IntMatrix relations(basis.transform.begin() + static_cast<std::ptrdiff_t>(basis.rank), basis.transform.end());
    if (relations.empty()) return relations;
    return hermite_basis(relations, rule.k()).H;
}

Rational dual_alpha(const MatchingRule& rule) {
    Rational alpha = 0;
    for (const auto& row : relation_basis(rule))
        for (auto v : row) alpha += std::llabs(v);
    return alpha;
}

}  // namespace pmatch
