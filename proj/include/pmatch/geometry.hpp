#pragma once

#include "pmatch/rational.hpp"
#include "pmatch/rules.hpp"

#include <optional>
#include <string_view>

namespace pmatch {

enum class ClassKind { Unsatisfiable, Critical, Underconstrained };

std::string_view to_string(ClassKind kind);

/// Non-negative coefficients a with aV = target.
struct ConeWitness {
    RationalVector a;
};

/// Where the intensity vector sits relative to cone(V), with a certificate:
///  - Unsatisfiable: charge with charge.lambda > 0 >= charge.v for all v.
///  - Critical: non-zero charge with charge.lambda = 0 >= charge.v, plus a witness.
///  - Underconstrained: witness with every coefficient >= margin > 0.
struct Classification {
    ClassKind kind = ClassKind::Unsatisfiable;
    std::optional<RationalVector> charge;
    std::optional<ConeWitness> witness;
    Rational margin = 0;
    std::size_t rank = 0;
};

std::optional<ConeWitness> cone_membership(const std::vector<FamilyType>& types, const RationalVector& target);
std::optional<ConeWitness> cone_membership(const MatchingRule& rule);

/// max { alpha : target = aV, a >= alpha } as an exact LP optimum, with its witness.
/// Does not apply the rank correction. Errors: NotInCone.
std::pair<Rational, ConeWitness> margin_lp(const std::vector<FamilyType>& types, const RationalVector& target);

/// Interior margin of lambda; forced to 0 when rank(V) < q. Errors: NotInCone.
Rational interior_margin(const MatchingRule& rule);

Classification classify(const MatchingRule& rule);

/// Errors: InCone.
RationalVector separating_charge(const MatchingRule& rule);
/// Errors: NotOnBoundary.
RationalVector supporting_charge(const MatchingRule& rule);
/// Errors: NotInCone.
ConeWitness cone_decomposition(const MatchingRule& rule);

/// Re-checks a classification's certificate by substitution. True when it holds.
bool verify_certificate(const MatchingRule& rule, const Classification& c);

}  // namespace pmatch
