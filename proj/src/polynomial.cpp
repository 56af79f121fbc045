#include "perverse/exactla/polynomial.hpp"

#include <algorithm>

namespace perverse {

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Polynomial::Polynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::monomial(int k, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Polynomial::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

Rational Polynomial::coefficient(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

Rational Polynomial::evaluate(const Rational& at) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Polynomial Polynomial::divide_by_eps_power(int k) const {
  if (k == 0 || is_zero()) return *this;
  if (valuation() < k) throw Error(ErrorCode::singular, "divide_by_eps_power: eps-valuation too small");
  return Polynomial(std::vector<Rational>(c_.begin() + k, c_.end()));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> out(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(out);
  trim();
  return *this;
}

std::string Polynomial::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    std::string coeff = c_[i].str();
    if (!out.empty()) out += (c_[i] < 0) ? " - " : " + ";
    else if (c_[i] < 0) out += "-";
    if (c_[i] < 0) coeff = Rational(-c_[i]).str();
    if (i == 0) {
      out += coeff;
    } else {
      if (coeff != "1") out += coeff + "*";
      out += "eps";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

PolynomialDivision divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::singular, "polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  const Rational lead = b.leading();
  std::vector<Rational> quot(rem.size() >= bc.size() ? rem.size() - bc.size() + 1 : 0, Rational(0));
  for (int k = static_cast<int>(rem.size()) - 1; k >= db; --k) {
    const Rational f = rem[static_cast<std::size_t>(k)] / lead;
    if (f == 0) continue;
    quot[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * bc[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto d = divide(a, b);
  if (!d.remainder.is_zero()) throw Error(ErrorCode::singular, "exact_quotient: nonzero remainder");
  return d.quotient;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = divide(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x * Polynomial(Rational(1) / x.leading());
}

Rational content(const Polynomial& p) {
  if (p.is_zero()) return Rational(1);
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& c : p.coefficients()) {
    if (c == 0) continue;
    num_gcd = boost::multiprecision::gcd(num_gcd, Integer(boost::multiprecision::abs(boost::multiprecision::numerator(c))));
    den_lcm = boost::multiprecision::lcm(den_lcm, Integer(boost::multiprecision::denominator(c)));
  }
  return Rational(num_gcd, den_lcm);
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::singular, "rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  const Polynomial g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = exact_quotient(num_, g);
    den_ = exact_quotient(den_, g);
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    const Polynomial s(Rational(1) / lead);
    num_ *= s;
    den_ *= s;
  }
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw Error(ErrorCode::singular, "rational function division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::string RationalFunction::str() const {
  if (den_ == Polynomial(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace perverse
