#include "perverse/exactla/subspace.hpp"

namespace perverse {

Subspace Subspace::span(const RationalMatrix& generators) {
  return Subspace(generators.rows(), image_basis(generators));
}

Subspace Subspace::zero(Index ambient_dim) { return Subspace(ambient_dim, RationalMatrix(ambient_dim, 0)); }

Subspace Subspace::whole(Index ambient_dim) { return Subspace(ambient_dim, identity<Rational>(ambient_dim)); }

bool Subspace::contains(const RationalVector& v) const {
  if (v.rows() != ambient_) throw Error(ErrorCode::shape, "Subspace::contains: ambient dimension mismatch");
  return try_solve<Rational>(basis_, v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::shape, "Subspace::contains: ambient dimension mismatch");
  if (other.dim() > dim()) return false;
  return rank<Rational>(hcat(basis_, other.basis_)) == dim();
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::shape, "Subspace sum: ambient dimension mismatch");
  return span(hcat(basis_, other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw Error(ErrorCode::shape, "Subspace intersection: ambient dimension mismatch");
  // B1 x = B2 y  <=>  [B1 | -B2] (x; y) = 0
  const RationalMatrix k = kernel_basis<Rational>(hcat<Rational>(basis_, -other.basis_));
  return span(basis_ * k.topRows(dim()));
}

RationalMatrix Subspace::coordinates(const RationalMatrix& vectors) const {
  return solve<Rational>(basis_, vectors);
}

Subspace image(const RationalMatrix& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) throw Error(ErrorCode::shape, "image: matrix does not act on the subspace");
  return Subspace::span(m * s.basis());
}

RationalMatrix gram(const RationalMatrix& left, const RationalMatrix& pairing, const RationalMatrix& right) {
  if (left.rows() != pairing.rows() || right.rows() != pairing.cols())
    throw Error(ErrorCode::shape, "gram: pairing shape mismatch");
  return left.transpose() * pairing * right;
}

Subspace right_orthogonal(const Subspace& w, const RationalMatrix& pairing) {
  if (pairing.rows() != w.ambient_dim()) throw Error(ErrorCode::shape, "right_orthogonal: pairing shape mismatch");
  const RationalMatrix constraints = w.basis().transpose() * pairing;
  return Subspace::span(kernel_basis(constraints));
}

Subspace left_orthogonal(const Subspace& w, const RationalMatrix& pairing) {
  if (pairing.cols() != w.ambient_dim()) throw Error(ErrorCode::shape, "left_orthogonal: pairing shape mismatch");
  const RationalMatrix constraints = (pairing * w.basis()).transpose();
  return Subspace::span(kernel_basis(constraints));
}

RankKernelImage rank_kernel_image(const RationalMatrix& m) {
  RankKernelImage out;
  out.image = Subspace::span(m);
  out.rank = out.image.dim();
  out.kernel = Subspace::span(kernel_basis(m));
  return out;
}

QuotientChart quotient_chart(const Subspace& sub) {
  const Index n = sub.ambient_dim();
  const auto e = reduced_row_echelon<Rational>(hcat(sub.basis(), identity<Rational>(n)));
  std::vector<Index> extra;
  for (Index p : e.pivots)
    if (p >= sub.dim()) extra.push_back(p - sub.dim());

  QuotientChart chart;
  const Index q = static_cast<Index>(extra.size());
  chart.section = zeros<Rational>(n, q);
  for (Index c = 0; c < q; ++c) chart.section(extra[static_cast<std::size_t>(c)], c) = 1;
  const RationalMatrix full_inverse = inverse<Rational>(hcat(sub.basis(), chart.section));
  chart.projection = full_inverse.bottomRows(q);
  return chart;
}

}  // namespace perverse
