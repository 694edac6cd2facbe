#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace pmatch {

// Expression templates off: values are small and `auto` stays a plain number.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", an integer, or a finite decimal literal ("0.25", "-1e-3") exactly.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace pmatch
