#include "kg2/rational.hpp"
#include "kg2/errors.hpp"

#include <cctype>

namespace kg2 {

Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw FormatError("malformed rational '" + std::string(text) + "'");
  boost::multiprecision::cpp_int n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  Rational r = Rational(n) / Rational(d);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool in_unit_interval(const Rational& r) { return r >= 0 && r <= 1; }

}  // namespace kg2
