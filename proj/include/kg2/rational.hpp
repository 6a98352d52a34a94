#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kg2 {

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "n" or "n/d" (optional leading '-'). Throws FormatError.
Rational parse_rational(std::string_view text);

/// Renders as "n" when integral, else "n/d" in lowest terms.
std::string to_string(const Rational& r);

bool in_unit_interval(const Rational& r);

}  // namespace kg2
