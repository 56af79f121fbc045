#include <doctest.h>

#include <stop_token>

#include "perverse/exactla/param.hpp"
#include "perverse/exactla/signature.hpp"
#include "support.hpp"

using namespace perverse;
using perverse::test::mat;
using perverse::test::vec;

namespace {

// Characteristic polynomial by Faddeev-LeVerrier, lowest degree first.
std::vector<Rational> charpoly(const RationalMatrix& a) {
  const Index n = a.rows();
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
  c[static_cast<std::size_t>(n)] = 1;
  RationalMatrix m = RationalMatrix::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(n - k + 1)] * RationalMatrix::Identity(n, n);
    c[static_cast<std::size_t>(n - k)] = -(a * m).trace() / Rational(k);
  }
  return c;
}

int sign_changes(const std::vector<Rational>& coeffs) {
  int changes = 0;
  int last = 0;
  for (const auto& x : coeffs) {
    const int s = x > 0 ? 1 : (x < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Oracle for the inertia of a symmetric matrix: its eigenvalues are real, so
// Descartes' rule counts them exactly.
Signature descartes_signature(const RationalMatrix& a) {
  auto c = charpoly(a);
  Index zero = 0;
  while (zero < static_cast<Index>(c.size()) && c[static_cast<std::size_t>(zero)] == 0) ++zero;
  std::vector<Rational> reduced(c.begin() + zero, c.end());
  std::vector<Rational> flipped = reduced;
  for (std::size_t i = 1; i < flipped.size(); i += 2) flipped[i] = -flipped[i];
  return {sign_changes(reduced), sign_changes(flipped), zero};
}

// Sylvester: negative definite iff the k-th leading minor has sign (-1)^k.
bool sylvester_negative_definite(const RationalMatrix& a) {
  for (Index k = 1; k <= a.rows(); ++k) {
    const Rational d = determinant<Rational>(a.topLeftCorner(k, k));
    if ((k % 2 == 1 && d >= 0) || (k % 2 == 0 && d <= 0)) return false;
  }
  return true;
}

Polynomial poly(std::initializer_list<int> coeffs) {
  std::vector<Rational> c;
  for (int x : coeffs) c.emplace_back(x);
  return Polynomial(std::move(c));
}

}  // namespace

TEST_CASE("rational literals parse to lowest terms") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("+5/10") == Rational(1, 2));
  CHECK(to_string(parse_rational("-6/3")) == "-2");
  CHECK(to_string(Rational(3, 7)) == "3/7");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("rank_kernel_image on the worked examples") {
  auto id = rank_kernel_image(mat({{1, 0}, {0, 1}}));
  CHECK(id.rank == 2);
  CHECK(id.kernel.dim() == 0);

  auto zero = rank_kernel_image(mat({{0}}));
  CHECK(zero.rank == 0);
  CHECK(zero.kernel.dim() == 1);

  auto r1 = rank_kernel_image(mat({{1, 2}, {2, 4}}));
  CHECK(r1.rank == 1);
  CHECK(r1.kernel == Subspace::span(mat({{2}, {-1}})));
  CHECK(r1.image == Subspace::span(mat({{1}, {2}})));
}

TEST_CASE("rank + nullity = cols on random matrices") {
  test::Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = rng.matrix(rng.integer(0, 5), rng.integer(0, 5));
    const auto rki = rank_kernel_image(m);
    CHECK(rki.rank + rki.kernel.dim() == m.cols());
    CHECK(rki.image.dim() == rki.rank);
    CHECK(is_zero(RationalMatrix(m * rki.kernel.basis())));
    for (Index j = 0; j < m.cols(); ++j) CHECK(rki.image.contains(RationalVector(m.col(j))));
  }
}

TEST_CASE("subspace arithmetic") {
  const auto a = Subspace::span(mat({{1, 0}, {0, 1}, {0, 0}}));
  const auto b = Subspace::span(mat({{0}, {1}, {1}}));
  CHECK((a + b).dim() == 3);
  CHECK(a.intersect(b).dim() == 0);
  const auto c = Subspace::span(mat({{1, 1}, {1, 1}, {0, 1}}));
  CHECK(a.intersect(c) == Subspace::span(mat({{1}, {1}, {0}})));
  // equality ignores the choice of basis
  CHECK(Subspace::span(mat({{1, 1}, {0, 1}})) == Subspace::whole(2));
  CHECK(right_orthogonal(Subspace::span(mat({{1}, {0}})), mat({{0, 1}, {1, 0}})) ==
        Subspace::span(mat({{1}, {0}})));
}

TEST_CASE("quotient_chart splits off a subspace") {
  const auto s = Subspace::span(mat({{1}, {1}, {0}}));
  const auto chart = quotient_chart(s);
  CHECK(chart.section.cols() == 2);
  CHECK(is_zero(RationalMatrix(chart.projection * s.basis())));
  CHECK(chart.projection * chart.section == identity<Rational>(2));
}

TEST_CASE("definiteness on the worked examples") {
  auto d1 = definiteness(mat({{-1}}));
  CHECK(d1.verdict == Definiteness::negative_definite);
  CHECK(d1.signature == Signature{0, 1, 0});

  const auto m2 = mat({{-2, 1}, {1, -2}});
  CHECK(sylvester_negative_definite(m2));
  auto d2 = definiteness(m2);
  CHECK(d2.verdict == Definiteness::negative_definite);
  CHECK(d2.signature == Signature{0, 2, 0});

  const auto hyperbolic = mat({{0, 1}, {1, 0}});
  CHECK(descartes_signature(hyperbolic) == Signature{1, 1, 0});
  auto d3 = definiteness(hyperbolic);
  CHECK(d3.verdict == Definiteness::indefinite);
  CHECK(d3.signature == Signature{1, 1, 0});

  CHECK(definiteness(mat({{0, 0}, {0, 0}})).verdict == Definiteness::degenerate);
  CHECK(definiteness(mat({{-1, 0}, {0, 0}})).verdict == Definiteness::negative_semidefinite);
  CHECK(definiteness(mat({{2, 0}, {0, 0}})).verdict == Definiteness::positive_semidefinite);
  CHECK(definiteness(test::empty()).verdict == Definiteness::empty);

  CHECK_THROWS_AS(definiteness(mat({{1, 2}})), Error);
  CHECK_THROWS_AS(definiteness(mat({{1, 2}, {0, 1}})), Error);
}

TEST_CASE("signature agrees with the Descartes oracle and mirrors under negation") {
  test::Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = rng.symmetric(rng.integer(1, 5));
    const auto s = signature(m);
    CHECK(s == descartes_signature(m));
    const auto neg = signature(RationalMatrix(-m));
    CHECK(neg == Signature{s.negative, s.positive, s.zero});
    if (sylvester_negative_definite(m)) CHECK(definiteness(m).verdict == Definiteness::negative_definite);
  }
}

TEST_CASE("quotient_form on the worked examples") {
  CHECK(quotient_form(mat({{0}}), vec({1})).size() == 0);

  const auto i2 = mat({{-2, 2}, {2, -2}});
  const auto q = quotient_form(i2, vec({1, 1}));
  CHECK(q == mat({{-2}}));
  // restriction to the complement spanned by (1,-1) has the same sign
  const auto u = vec({1, -1});
  CHECK(Rational(u.transpose() * i2 * u) < 0);
  CHECK(definiteness(q).verdict == Definiteness::negative_definite);

  CHECK(quotient_form(mat({{-1, 1}, {1, -1}}), vec({1, 1})) == mat({{-1}}));

  CHECK_THROWS_AS(quotient_form(mat({{-2, 0}, {0, -2}}), vec({1, 1})), Error);
  try {
    quotient_form(mat({{-2, 0}, {0, -2}}), vec({1, 1}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_in_radical);
  }
}

TEST_CASE("quotient_form drops exactly one null direction") {
  test::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    // m = P^T diag(d, 0) P has radical spanned by P^{-1} e_last
    const Index n = rng.integer(1, 5);
    RationalMatrix diag = RationalMatrix::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i) diag(i, i) = rng.coin() ? rng.integer(1, 3) : -rng.integer(1, 3);
    const auto p = rng.invertible(n);
    const RationalMatrix m = p.transpose() * diag * p;
    const RationalVector v = inverse<Rational>(p).col(n - 1);
    const auto full = signature(m);
    const auto q = signature(quotient_form(m, v));
    CHECK(q == Signature{full.positive, full.negative, full.zero - 1});
  }
}

TEST_CASE("polynomial arithmetic") {
  const auto a = poly({1, 0, 1});   // 1 + e^2
  const auto b = poly({-1, 1});     // e - 1
  const auto d = divide(a * b + poly({3}), b);
  CHECK(d.quotient == a);
  CHECK(d.remainder == poly({3}));
  CHECK(gcd(a * b, b * b) == b);
  CHECK(poly({0, 0, 3}).valuation() == 2);
  CHECK(content(Polynomial(std::vector<Rational>{Rational(2, 3), Rational(4, 9)})) == Rational(2, 9));
  CHECK(RationalFunction(a * b, b * b) == RationalFunction(a, b));
  CHECK(RationalFunction(poly({2}), poly({4})) == RationalFunction(Rational(1, 2)));
}

TEST_CASE("param_kernel on the worked examples") {
  ParamMatrix eps(1, 1);
  eps(0, 0) = RationalFunction(poly({0, 1}));
  CHECK(param_kernel(eps).cols() == 0);

  ParamMatrix diag = to_param(mat({{0, 0}, {0, 0}}));
  diag(1, 1) = RationalFunction(poly({0, 1}));
  auto k2 = param_kernel(diag);
  REQUIRE(k2.cols() == 1);
  CHECK(k2(0, 0) == poly({1}));
  CHECK(k2(1, 0) == poly({}));

  ParamMatrix row = to_param(mat({{0, 1}, {0, 0}}));
  row(0, 0) = RationalFunction(poly({0, 1}));
  auto k3 = param_kernel(row);
  REQUIRE(k3.cols() == 1);
  CHECK(k3(0, 0) == poly({1}));
  CHECK(k3(1, 0) == poly({0, -1}));
}

TEST_CASE("param_kernel matches elimination over Q(eps) on random pencils") {
  test::Rng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const Index r = rng.integer(1, 4);
    const Index c = rng.integer(1, 4);
    const auto p = pencil(rng.matrix(r, c, -2, 2, 0.5), rng.matrix(r, c, -2, 2, 0.5));
    const auto k = param_kernel(p);
    // Independent route: generic Gauss-Jordan over the rational-function field.
    CHECK(k.cols() == c - rank<RationalFunction>(p));
    ParamMatrix kp(k.rows(), k.cols());
    for (Index i = 0; i < k.rows(); ++i)
      for (Index j = 0; j < k.cols(); ++j) kp(i, j) = RationalFunction(k(i, j));
    CHECK(is_zero(ParamMatrix(p * kp)));
    CHECK(rank<RationalFunction>(kp) == k.cols());
    for (Index j = 0; j < k.cols(); ++j)
      for (Index i = 0; i < k.rows(); ++i)
        for (const auto& coeff : k(i, j).coefficients()) CHECK(is_integer(coeff));
  }
}

TEST_CASE("param_kernel honours cancellation") {
  std::stop_source source;
  source.request_stop();
  const auto p = pencil(mat({{1, 0}, {0, 1}}), mat({{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(param_kernel(p, source.get_token()), Error);
}

TEST_CASE("subspace_limit on the worked examples") {
  PolyMatrix constant(2, 1);
  constant << poly({1}), poly({});
  CHECK(subspace_limit(constant) == Subspace::span(mat({{1}, {0}})));

  PolyMatrix tilt(2, 1);
  tilt << poly({1}), poly({0, 1});
  CHECK(subspace_limit(tilt) == Subspace::span(mat({{1}, {0}})));

  // (1, e) and (1, 2e): difference (0, e) saturates to (0, 1)
  PolyMatrix pair(2, 2);
  pair << poly({1}), poly({1}), poly({0, 1}), poly({0, 2});
  CHECK(subspace_limit(pair) == Subspace::whole(2));
}

TEST_CASE("subspace_limit of a pencil kernel lies in the kernel at eps = 0") {
  test::Rng rng(5);
  int nontrivial = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const Index r = rng.integer(1, 3);
    const Index c = rng.integer(2, 5);
    const auto base = rng.matrix(r, c, -2, 2, 0.6);
    const auto dir = rng.matrix(r, c, -2, 2, 0.4);
    const auto k = param_kernel(pencil(base, dir));
    const auto limit = subspace_limit(k);
    CHECK(limit.dim() == k.cols());
    CHECK(is_zero(RationalMatrix(base * limit.basis())));
    if (rank(evaluate(k, 0)) < k.cols()) ++nontrivial;
  }
  MESSAGE("families needing saturation: " << nontrivial);
}
