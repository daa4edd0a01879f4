#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace causalst {

/// Exact rational scalar. Everything probabilistic in this library is a
/// Rational; there is no floating point anywhere in a verdict path.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "p/q", "p" or "-p/q" (ASCII digits, optional sign, optional
/// surrounding whitespace). Throws QueryError on anything else or q == 0.
Rational parse_rational(std::string_view text);

/// Formats as "p/q" with q >= 1, e.g. "4/1", "-3/8". Inverse of
/// parse_rational up to normalization.
std::string format_rational(const Rational& value);

/// |value|, used by total-variation distances.
Rational rational_abs(const Rational& value);

}  // namespace causalst
