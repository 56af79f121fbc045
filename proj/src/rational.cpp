#include "perverse/exactla/rational.hpp"

#include <cctype>

#include "perverse/errors.hpp"

namespace perverse {
namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num, true))
    throw Error(ErrorCode::parse, "invalid rational literal '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(parse_integer(num));

  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den, false))
    throw Error(ErrorCode::parse, "invalid rational literal '" + std::string(text) + "'");
  const Integer d = parse_integer(den);
  if (d == 0) throw Error(ErrorCode::parse, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(num), d);
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace perverse
