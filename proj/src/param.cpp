#include "perverse/exactla/param.hpp"

namespace perverse {
namespace {

// Joint content of a list of polynomials: gcd of all numerators over lcm of
// all denominators.
Rational joint_content(const std::vector<const Polynomial*>& polys) {
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const Polynomial* p : polys)
    for (const auto& c : p->coefficients()) {
      if (c == 0) continue;
      num_gcd = boost::multiprecision::gcd(num_gcd, Integer(boost::multiprecision::abs(boost::multiprecision::numerator(c))));
      den_lcm = boost::multiprecision::lcm(den_lcm, Integer(boost::multiprecision::denominator(c)));
    }
  if (num_gcd == 0) return Rational(1);
  return Rational(num_gcd, den_lcm);
}

// Divides a row (or column) by its polynomial gcd and its rational content.
template <class Block>
void make_primitive(Block&& entries) {
  Polynomial g;
  for (Index i = 0; i < entries.size(); ++i) g = gcd(g, entries(i));
  if (g.is_zero()) return;
  if (g.degree() > 0)
    for (Index i = 0; i < entries.size(); ++i) entries(i) = exact_quotient(entries(i), g);
  std::vector<const Polynomial*> ps;
  for (Index i = 0; i < entries.size(); ++i) ps.push_back(&entries(i));
  const Rational c = joint_content(ps);
  if (c != 1) {
    const Polynomial inv(Rational(1) / c);
    for (Index i = 0; i < entries.size(); ++i) entries(i) *= inv;
  }
}

template <class Block>
void fix_sign(Block&& entries) {
  for (Index i = 0; i < entries.size(); ++i) {
    if (entries(i).is_zero()) continue;
    if (entries(i).leading() < 0)
      for (Index j = 0; j < entries.size(); ++j) entries(j) = -entries(j);
    return;
  }
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  return exact_quotient(a * b, gcd(a, b));
}

}  // namespace

ParamMatrix to_param(const RationalMatrix& m) {
  ParamMatrix p(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) p(i, j) = RationalFunction(m(i, j));
  return p;
}

ParamMatrix pencil(const RationalMatrix& base, const RationalMatrix& direction) {
  if (base.rows() != direction.rows() || base.cols() != direction.cols())
    throw Error(ErrorCode::shape, "pencil: operator shapes differ");
  ParamMatrix p(base.rows(), base.cols());
  for (Index i = 0; i < base.rows(); ++i)
    for (Index j = 0; j < base.cols(); ++j)
      p(i, j) = RationalFunction(Polynomial(std::vector<Rational>{base(i, j), direction(i, j)}));
  return p;
}

RationalMatrix evaluate(const PolyMatrix& m, const Rational& at) {
  RationalMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(at);
  return out;
}

PolyMatrix param_kernel(const ParamMatrix& p, std::stop_token stop) {
  const Index rows = p.rows();
  const Index cols = p.cols();

  PolyMatrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    Polynomial den(1);
    for (Index j = 0; j < cols; ++j) den = lcm(den, p(i, j).denominator());
    for (Index j = 0; j < cols; ++j) a(i, j) = p(i, j).numerator() * exact_quotient(den, p(i, j).denominator());
    make_primitive(a.row(i));
  }

  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    if (stop.stop_requested()) throw Error(ErrorCode::cancelled, "param_kernel: cancelled");
    // Lowest-degree nonzero entry, first one on ties.
    Index pivot = -1;
    for (Index i = row; i < rows; ++i)
      if (!a(i, col).is_zero() && (pivot < 0 || a(i, col).degree() < a(pivot, col).degree())) pivot = i;
    if (pivot < 0) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));

    for (Index i = 0; i < rows; ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Polynomial g = gcd(a(row, col), a(i, col));
      const Polynomial keep = exact_quotient(a(row, col), g);
      const Polynomial take = exact_quotient(a(i, col), g);
      for (Index j = 0; j < cols; ++j) a(i, j) = keep * a(i, j) - take * a(row, j);
      make_primitive(a.row(i));
    }
    pivots.push_back(col);
    ++row;
  }

  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  Polynomial pivot_lcm(1);
  for (Index r = 0; r < static_cast<Index>(pivots.size()); ++r)
    pivot_lcm = lcm(pivot_lcm, a(r, pivots[static_cast<std::size_t>(r)]));

  std::vector<Index> free;
  for (Index j = 0; j < cols; ++j)
    if (!is_pivot[static_cast<std::size_t>(j)]) free.push_back(j);

  PolyMatrix k = zeros<Polynomial>(cols, static_cast<Index>(free.size()));
  for (Index c = 0; c < static_cast<Index>(free.size()); ++c) {
    const Index f = free[static_cast<std::size_t>(c)];
    k(f, c) = pivot_lcm;
    for (Index r = 0; r < static_cast<Index>(pivots.size()); ++r) {
      const Index pc = pivots[static_cast<std::size_t>(r)];
      k(pc, c) = -(a(r, f) * exact_quotient(pivot_lcm, a(r, pc)));
    }
    make_primitive(k.col(c));
    fix_sign(k.col(c));
  }
  return k;
}

Subspace subspace_limit(const PolyMatrix& family) {
  PolyMatrix k = family;
  const Index d = k.cols();
  for (;;) {
    const RationalMatrix at_zero = evaluate(k, Rational(0));
    const RationalMatrix dependencies = kernel_basis(at_zero);
    if (dependencies.cols() == 0) return Subspace::span(at_zero);

    // The first dependency has a 1 at its free slot; that column is replaced.
    const RationalVector c = dependencies.col(0);
    Index slot = 0;
    while (c(slot) != 1) ++slot;
    Vector<Polynomial> w = Vector<Polynomial>::Constant(k.rows(), Polynomial());
    for (Index j = 0; j < d; ++j) {
      if (c(j) == 0) continue;
      const Polynomial cj(c(j));
      for (Index i = 0; i < k.rows(); ++i) w(i) += cj * k(i, j);
    }
    int val = -1;
    for (Index i = 0; i < w.rows(); ++i) {
      const int v = w(i).valuation();
      if (v >= 0 && (val < 0 || v < val)) val = v;
    }
    if (val < 0) throw Error(ErrorCode::singular, "subspace_limit: columns are dependent over Q(eps)");
    for (Index i = 0; i < w.rows(); ++i) k(i, slot) = w(i).divide_by_eps_power(val);
  }
}

}  // namespace perverse
