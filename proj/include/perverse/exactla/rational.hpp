#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace perverse {

/// Exact rationals, always in lowest terms with a positive denominator.
/// Expression templates are off so that Eigen sees a plain value type.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Parses "p" or "p/q" (optional sign on p, q nonzero). Throws Error(parse).
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

}  // namespace perverse
