#include "pmatch/schemes.hpp"

#include <algorithm>

namespace pmatch {

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::BadIndex: return "BadIndex";
        case ViolationKind::Partition: return "PartitionViolation";
        case ViolationKind::Type: return "TypeViolation";
        case ViolationKind::Coverage: return "CoverageViolation";
        case ViolationKind::Charge: return "ChargeViolation";
    }
    return "Unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

ValidationReport validate_matching(const Matching& matching, const PointConfiguration& config,
                                   const MatchingRule& rule, const ValidationOptions& options) {
    ValidationReport report;
    const std::size_t n = config.size();
    std::vector<unsigned> seen(n, 0);
    // counts equal the declared type once the type check passes, so the charge is per type
    std::vector<bool> neutral(rule.k(), true);
    if (options.charge)
        for (std::size_t j = 0; j < rule.k(); ++j) {
            Rational charge = 0;
            for (std::size_t i = 0; i < rule.q(); ++i) charge += (*options.charge)[i] * rule.type(j).counts[i];
            neutral[j] = charge == 0;
        }
    auto mark = [&](std::size_t p, std::size_t subject) {
        if (p >= n) {
            report.violations.push_back({ViolationKind::BadIndex, subject, "point index out of range"});
            return false;
        }
        ++seen[p];
        return true;
    };

    for (std::size_t f = 0; f < matching.families.size(); ++f) {
        const auto& family = matching.families[f];
        std::vector<int> counts(rule.q(), 0);
        bool indices_ok = true;
        for (auto p : family.points) {
            if (!mark(p, f)) {
                indices_ok = false;
                continue;
            }
            const int c = config.colour(p);
            if (c < 0 || static_cast<std::size_t>(c) >= rule.q()) {
                indices_ok = false;
                report.violations.push_back({ViolationKind::BadIndex, f, "colour outside the rule"});
                continue;
            }
            ++counts[static_cast<std::size_t>(c)];
        }
        if (!indices_ok) continue;
        if (family.type_index >= rule.k() || rule.type(family.type_index).counts != counts) {
            const bool in_v = std::any_of(rule.types().begin(), rule.types().end(),
                                          [&](const FamilyType& t) { return t.counts == counts; });
            report.violations.push_back({ViolationKind::Type, f,
                                         in_v ? "family type index does not match its colour counts"
                                              : "family colour counts are not a type of V"});
            continue;
        }
        if (options.charge && !neutral[family.type_index])
            report.violations.push_back({ViolationKind::Charge, f, "family type has non-zero charge"});
    }
    for (auto p : matching.unmatched) mark(p, p);

    for (std::size_t p = 0; p < n; ++p) {
        if (seen[p] == 0)
            report.violations.push_back({ViolationKind::Partition, p, "point neither matched nor listed unmatched"});
        else if (seen[p] > 1)
            report.violations.push_back({ViolationKind::Partition, p, "point used more than once"});
    }

    if (options.core) {
        for (auto p : matching.unmatched) {
            if (p >= n || !options.core->contains(config.position(p))) continue;
            if (options.allow_unmatched_core)
                ++report.censored_core_points;
            else
                report.violations.push_back({ViolationKind::Coverage, p, "core-window point is unmatched"});
        }
    }
    return report;
}

}  // namespace pmatch
