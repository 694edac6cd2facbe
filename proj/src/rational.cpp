#include "pmatch/rational.hpp"

#include "pmatch/error.hpp"

#include <cctype>

namespace pmatch {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) fail(Errc::ParseError, "empty integer in '" + std::string(whole) + "'");
    BigInt value = 0;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(Errc::ParseError, "bad digit in '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
    }
    return value;
}

BigInt pow10(long exponent) {
    BigInt p = 1;
    for (long i = 0; i < exponent; ++i) p *= 10;
    return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash), whole);
        BigInt den = parse_integer(text.substr(slash + 1), whole);
        if (den == 0) fail(Errc::ParseError, "zero denominator in '" + std::string(whole) + "'");
        result = Rational(num, den);
    } else {
        long exponent = 0;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            std::string_view exp_text = text.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            exponent = static_cast<long>(parse_integer(exp_text, whole));
            if (exp_negative) exponent = -exponent;
            text = text.substr(0, e);
        }
        std::string_view int_part = text;
        std::string_view frac_part;
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            int_part = text.substr(0, dot);
            frac_part = text.substr(dot + 1);
        }
        if (int_part.empty() && frac_part.empty())
            fail(Errc::ParseError, "empty number '" + std::string(whole) + "'");
        BigInt digits = 0;
        for (std::string_view part : {int_part, frac_part})
            if (!part.empty()) digits = digits * pow10(static_cast<long>(part.size())) + parse_integer(part, whole);
        exponent -= static_cast<long>(frac_part.size());
        if (exponent >= 0)
            result = Rational(digits * pow10(exponent));
        else
            result = Rational(digits, pow10(-exponent));
    }
    return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& value) {
    const auto num = boost::multiprecision::numerator(value);
    const auto den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace pmatch
