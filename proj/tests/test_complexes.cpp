#include <doctest.h>

#include "perverse/complexes.hpp"
#include "support.hpp"

using namespace perverse;
using perverse::test::mat;

namespace {

// Rank-nullity oracle: dim H^k = dim C^k - rank d(k) - rank d(k-1).
Index oracle_dim(const ChainComplex& c, int k) {
  return c.dim(k) - rank(c.d(k)) - rank(c.d(k - 1));
}

void check_against_oracle(const ChainComplex& c) {
  const Cohomology h(c);
  for (int k = c.lo() - 1; k <= c.hi() + 1; ++k) {
    CHECK(h.dim(k) == oracle_dim(c, k));
    if (h.dim(k) == 0) continue;
    const RationalMatrix reps = h.representatives(k);
    CHECK(is_zero(RationalMatrix(c.d(k) * reps)));
    CHECK(h.classes(k, reps) == RationalMatrix::Identity(h.dim(k), h.dim(k)));
  }
}

// Exactness of A -> B -> C at B: rank(in) + rank(out) = dim B.
bool exact_at(const RationalMatrix& in, const RationalMatrix& out, Index dim_middle) {
  return rank(in) + rank(out) == dim_middle && is_zero(RationalMatrix(out * in));
}

}  // namespace

TEST_CASE("cohomology on the worked examples") {
  CHECK(Cohomology(ChainComplex()).dims().empty());
  CHECK(Cohomology(ChainComplex(0, {1, 1}, {mat({{1}})})).dims().empty());
  const auto h = Cohomology(ChainComplex(4, {2, 1}, {mat({{1, 0}})}));
  CHECK(h.dim(4) == 1);
  CHECK(h.dim(5) == 0);
  CHECK(h.representatives(4) == mat({{0}, {1}}));
}

TEST_CASE("construction rejects d o d != 0 and bad shapes") {
  CHECK_THROWS_AS(ChainComplex(0, {1, 1, 1}, {mat({{1}}), mat({{1}})}), Error);
  CHECK_THROWS_AS(ChainComplex(0, {1, 2}, {mat({{1}})}), Error);
  const auto a = ChainComplex::concentrated(0, 1);
  const auto b = ChainComplex(0, {1, 1}, {mat({{1}})});
  // Q -> (Q -> Q) by 1 in degree 0 fails the square into degree 1.
  CHECK_THROWS_AS(ChainMap(a, b, {mat({{1}})}), Error);
}

TEST_CASE("cohomology agrees with the rank-nullity oracle") {
  test::Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) check_against_oracle(rng.complex(rng.integer(-3, 3), rng.integer(0, 6), 5));
}

TEST_CASE("truncation on the worked examples") {
  const auto acyclic = ChainComplex(0, {1, 1}, {mat({{1}})});
  const auto t = truncate(acyclic, TruncationMode::at_most, 0);
  CHECK(t.dim(0) == 0);
  CHECK(Cohomology(t).dims().empty());

  const auto stalk = ChainComplex::formal(-3, {1, 0, 1, 1});
  const auto t2 = truncate(stalk, TruncationMode::at_most, -1);
  CHECK(t2.lo() == -3);
  CHECK(t2.dims() == std::vector<Index>{1, 0, 1});

  CHECK(truncate(ChainComplex::concentrated(0, 3), TruncationMode::at_least, 1).total_dim() == 0);
}

TEST_CASE("truncations keep cohomology in range and kill it outside") {
  test::Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const auto c = rng.complex(rng.integer(-3, 3), rng.integer(0, 6), 4);
    const Cohomology h(c);
    for (int k = c.lo() - 2; k <= c.hi() + 2; ++k) {
      const auto low = truncation_inclusion(c, k);
      const auto high = truncation_projection(c, k);
      const Cohomology hl(low.source());
      const Cohomology hh(high.target());
      for (int j = c.lo() - 1; j <= c.hi() + 1; ++j) {
        CHECK(hl.dim(j) == (j <= k ? h.dim(j) : 0));
        CHECK(hh.dim(j) == (j >= k ? h.dim(j) : 0));
        if (j <= k) CHECK(rank(induced_on_cohomology(low, j)) == h.dim(j));
        if (j >= k) CHECK(rank(induced_on_cohomology(high, j)) == h.dim(j));
      }
    }
  }
}

TEST_CASE("shift reindexes cohomology") {
  test::Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = rng.complex(rng.integer(-2, 2), rng.integer(1, 5), 3);
    const int l = rng.integer(-3, 3);
    const Cohomology h(c);
    const Cohomology hs(shift(c, l));
    for (int k = c.lo() - l - 1; k <= c.hi() - l + 1; ++k) CHECK(hs.dim(k) == h.dim(k + l));
  }
}

TEST_CASE("cone on the worked examples") {
  const auto q = ChainComplex::concentrated(0, 1);
  CHECK(Cohomology(cone(ChainMap::identity(q))).dims().empty());

  const auto a = ChainComplex(0, {2, 1}, {mat({{1, 0}})});
  const auto b = ChainComplex::formal(-1, {1, 2});
  const auto h = Cohomology(cone(ChainMap::zero(a, b)));
  CHECK(h.dim(-1) == 1 + 1);  // H^{-1}(B) + H^0(A)
  CHECK(h.dim(0) == 2);

  const auto q2 = ChainComplex::concentrated(0, 2);
  const auto f = ChainMap(q, q2, {mat({{1}, {0}})});
  const auto hc = Cohomology(cone(f));
  CHECK(hc.dims() == std::map<int, Index>{{0, 1}});
}

TEST_CASE("cone long exact sequence is exact") {
  test::Rng rng(13);
  for (int trial = 0; trial < 120; ++trial) {
    const auto a = rng.complex(rng.integer(-2, 1), rng.integer(1, 4), 3);
    const auto b = rng.complex(rng.integer(-2, 1), rng.integer(1, 4), 3);
    // f = d_B h + h d_A is always a chain map; the extra top-degree term maps
    // cycles classes of A into cycles of B, so it commutes too and makes H(f)
    // nonzero.
    std::vector<RationalMatrix> h;
    for (int k = a.lo(); k <= a.hi() + 1; ++k) h.push_back(rng.matrix(b.dim(k - 1), a.dim(k), -1, 1, 0.5));
    auto hom = [&](int k) { return h[static_cast<std::size_t>(k - a.lo())]; };
    std::vector<RationalMatrix> comps;
    for (int k = a.lo(); k <= a.hi(); ++k) comps.push_back(b.d(k - 1) * hom(k) + hom(k + 1) * a.d(k));
    const int k = a.hi();
    const auto zb = kernel_basis(b.d(k));
    const auto chart = quotient_chart(Subspace::span(a.d(k - 1)));
    if (zb.cols() > 0 && chart.section.cols() > 0)
      comps.back() += zb * rng.matrix(zb.cols(), chart.section.cols(), -2, 2) * chart.projection;
    const ChainMap f(a, b, comps);
    const auto i = cone_inclusion(f);
    const auto p = cone_projection(f);
    const Cohomology ha(a), hb(b), hc(i.target());
    const int lo = std::min(a.lo(), b.lo()) - 2;
    const int hi = std::max(a.hi(), b.hi()) + 1;
    long euler = 0;
    for (int j = lo; j <= hi; ++j) {
      const auto fj = induced_on_cohomology(f, j);
      const auto ij = induced_on_cohomology(i, j);
      const auto pj = induced_on_cohomology(p, j);  // H^j(cone) -> H^{j+1}(A)
      const auto fj1 = induced_on_cohomology(f, j + 1);
      const auto pjm = induced_on_cohomology(p, j - 1);
      CHECK(exact_at(fj, ij, hb.dim(j)));
      CHECK(exact_at(ij, pj, hc.dim(j)));
      CHECK(exact_at(pj, fj1, ha.dim(j + 1)));
      CHECK(exact_at(pjm, fj, ha.dim(j)));
      const long alternating = (j % 2 == 0) ? 1 : -1;
      euler += alternating * (static_cast<long>(hb.dim(j)) - ha.dim(j) - hc.dim(j));
    }
    CHECK(euler == 0);  // chi(cone) = chi(B) - chi(A)
  }
}

TEST_CASE("dualize on the worked examples") {
  const auto d0 = dualize(ChainComplex::concentrated(0, 1), 0);
  CHECK(d0.lo() == 0);
  CHECK(d0.dims() == std::vector<Index>{1});
  const auto d1 = dualize(ChainComplex::concentrated(-2, 1), 1);
  CHECK(d1.lo() == 0);
  CHECK(d1.dim(0) == 1);

  test::Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const auto c = rng.complex(rng.integer(-3, 3), rng.integer(0, 6), 4);
    const int r = rng.integer(-3, 3);
    const auto dd = dualize(dualize(c, r), r);
    if (!c.dims().empty()) CHECK(dd.lo() == c.lo());
    CHECK(dd.dims() == c.dims());
    CHECK(same_cohomology_dims(dd, c));
    const Cohomology h(c), hd(dualize(c, r));
    for (int k = c.lo(); k <= c.hi(); ++k) CHECK(hd.dim(-k - 2 * r) == h.dim(k));
  }
}

TEST_CASE("truncation commutes with duality up to regrading") {
  test::Rng rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = rng.complex(rng.integer(-3, 3), rng.integer(0, 6), 5);
    for (int r = -3; r <= 3; ++r)
      for (int k = -12; k <= 12; ++k) {
        const auto lhs = truncate(dualize(c, r), TruncationMode::at_most, k);
        const auto rhs = dualize(truncate(c, TruncationMode::at_least, -k - 2 * r), r);
        CHECK(same_cohomology_dims(lhs, rhs));
      }
  }
}

TEST_CASE("minimal model has the same cohomology and zero differentials") {
  test::Rng rng(16);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = rng.complex(0, rng.integer(1, 6), 4);
    const auto m = minimal_model(c);
    CHECK(same_cohomology_dims(c, m));
    for (int k = m.lo(); k < m.hi(); ++k) CHECK(is_zero(m.d(k)));
  }
}
