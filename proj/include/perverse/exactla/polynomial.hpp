#pragma once

#include <string>
#include <utility>
#include <vector>

#include "perverse/exactla/matrix.hpp"

namespace perverse {

/// Dense univariate polynomial in the formal parameter eps with rational
/// coefficients, stored lowest degree first with no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT: scalars embed
  Polynomial(const Rational& c);                   // NOLINT
  explicit Polynomial(std::vector<Rational> coefficients);

  /// eps^k
  static Polynomial monomial(int k, const Rational& c = Rational(1));

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Exponent of the lowest nonzero term; -1 for the zero polynomial.
  int valuation() const;
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(int k) const;
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational evaluate(const Rational& at) const;

  /// Exact division by eps^k; requires valuation() >= k.
  Polynomial divide_by_eps_power(int k) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct PolynomialDivision {
  Polynomial quotient;
  Polynomial remainder;
};

PolynomialDivision divide(const Polynomial& a, const Polynomial& b);

/// Exact quotient; throws Error(singular) when b does not divide a.
Polynomial exact_quotient(const Polynomial& a, const Polynomial& b);

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Rational c > 0 such that p / c has coprime integer coefficients.
Rational content(const Polynomial& p);

/// Element of Q(eps) as num/den with gcd(num, den) = 1 and den monic.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(int c) : num_(c), den_(1) {}                 // NOLINT
  RationalFunction(const Rational& c) : num_(c), den_(1) {}     // NOLINT
  RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_); }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

using PolyMatrix = Matrix<Polynomial>;
using ParamMatrix = Matrix<RationalFunction>;

}  // namespace perverse

namespace Eigen {

template <>
struct NumTraits<perverse::Polynomial> : GenericNumTraits<perverse::Polynomial> {
  using Real = perverse::Polynomial;
  using NonInteger = perverse::Polynomial;
  using Literal = perverse::Polynomial;
  using Nested = perverse::Polynomial;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 200,
  };
};

template <>
struct NumTraits<perverse::RationalFunction> : GenericNumTraits<perverse::RationalFunction> {
  using Real = perverse::RationalFunction;
  using NonInteger = perverse::RationalFunction;
  using Literal = perverse::RationalFunction;
  using Nested = perverse::RationalFunction;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 200,
    MulCost = 400,
  };
};

}  // namespace Eigen
