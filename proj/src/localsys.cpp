#include "perverse/localsys.hpp"

namespace perverse {
namespace {

RationalMatrix phi(const TorusLocalSystem& ls) {
  RationalMatrix out(2 * ls.dim(), ls.dim());
  out << ls.n1(), ls.n2();
  return out;
}

RationalMatrix psi(const TorusLocalSystem& ls) {
  RationalMatrix out(ls.dim(), 2 * ls.dim());
  out << ls.n2(), -ls.n1();
  return out;
}

}  // namespace

void validate(const TorusLocalSystem& ls) {
  if (ls.t1.rows() != ls.t1.cols() || ls.t2.rows() != ls.t2.cols() || ls.t1.rows() != ls.t2.rows())
    throw Error(ErrorCode::shape, "local system: monodromies must be square of the same size");
  if (!is_invertible(ls.t1) || !is_invertible(ls.t2))
    throw Error(ErrorCode::singular, "local system: monodromy is not invertible");
  if (ls.t1 * ls.t2 != ls.t2 * ls.t1) throw Error(ErrorCode::invalid_map, "local system: T1 and T2 do not commute");
}

ChainComplex koszul_complex(const TorusLocalSystem& ls) {
  validate(ls);
  const Index d = ls.dim();
  return ChainComplex(0, {d, 2 * d, d}, {phi(ls), psi(ls)});
}

KoszulCohomology koszul_cohomology(const TorusLocalSystem& ls) {
  const Cohomology h(koszul_complex(ls));
  KoszulCohomology out;
  out.h0 = h.dim(0);
  out.h1 = h.dim(1);
  out.h2 = h.dim(2);
  out.h0_basis = h.representatives(0);
  out.h1_representatives = h.representatives(1);
  out.h2_representatives = h.representatives(2);
  return out;
}

NormalCrossingStalk ic_stalk_normal_crossing(const TorusLocalSystem& ls) {
  validate(ls);
  const Index d = ls.dim();
  const RationalMatrix n12 = ls.n1() * ls.n2();
  RationalMatrix constraint(d, 2 * d);
  constraint << n12, -n12;
  const Subspace pairs = Subspace::span(kernel_basis(constraint));
  const Subspace numerator = image(block_diagonal(ls.n1(), ls.n2()), pairs);
  const Subspace denominator = Subspace::span(phi(ls));
  if (!numerator.contains(denominator))
    throw Error(ErrorCode::invalid_map, "ic_stalk_normal_crossing: coboundaries escape the numerator");

  NormalCrossingStalk out;
  out.degree_minus2 = Subspace::span(kernel_basis(ls.n1())).intersect(Subspace::span(kernel_basis(ls.n2()))).dim();
  out.degree_minus1 = numerator.dim() - denominator.dim();
  return out;
}

NormalCrossingStalk ic_stalk_oracle(const TorusLocalSystem& ls) {
  const KoszulCohomology k = koszul_cohomology(ls);
  const RationalMatrix p1 = quotient_chart(Subspace::span(ls.n1())).projection;
  const RationalMatrix p2 = quotient_chart(Subspace::span(ls.n2())).projection;
  // Residues of the H^1 classes along the two branches.
  const RationalMatrix residues = block_diagonal(p1, p2) * k.h1_representatives;
  NormalCrossingStalk out;
  out.degree_minus2 = k.h0;
  out.degree_minus1 = k.h1 - rank(residues);
  return out;
}

}  // namespace perverse
