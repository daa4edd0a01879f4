#include "causalst/rational.hpp"

#include <cctype>

#include "causalst/errors.hpp"

namespace causalst {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view original) {
  if (s.empty()) throw QueryError("empty integer in rational '" + std::string(original) + "'");
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) throw QueryError("sign without digits in rational '" + std::string(original) + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw QueryError("invalid character in rational '" + std::string(original) + "'");
  }
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw QueryError("empty rational literal");
  const std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(s, text));
  }
  if (s.find('/', slash + 1) != std::string_view::npos)
    throw QueryError("multiple '/' in rational '" + std::string(text) + "'");
  const Integer num = parse_integer(trim(s.substr(0, slash)), text);
  const Integer den = parse_integer(trim(s.substr(slash + 1)), text);
  if (den == 0) throw QueryError("zero denominator in rational '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational rational_abs(const Rational& value) {
  return value < 0 ? Rational(-value) : value;
}

}  // namespace causalst
