#include "perverse/forms.hpp"

namespace perverse {

GrauertResult grauert_check(const CurveConfig& c) {
  GrauertResult out;
  out.form = definiteness(c.m);
  out.verdict = status_of(out.form.verdict == Definiteness::negative_definite);
  out.class_map_iso = out.form.signature.nondegenerate();
  return out;
}

ZariskiResult zariski_check(const FiberCycle& f) {
  const RationalMatrix& m = f.config.m;
  if (m.rows() != m.cols() || f.a.rows() != m.rows())
    throw Error(ErrorCode::shape, "zariski_check: multiplicity vector does not match the configuration");
  if (!is_symmetric(m)) throw Error(ErrorCode::not_symmetric, "zariski_check: intersection matrix is not symmetric");
  for (Index i = 0; i < f.a.rows(); ++i)
    if (f.a(i) <= 0) throw Error(ErrorCode::not_fiber_cycle, "zariski_check: multiplicities must be positive");
  if (!is_zero(RationalVector(m * f.a)))
    throw Error(ErrorCode::not_fiber_cycle, "zariski_check: m a != 0, so F . D_k != 0 for some k");

  ZariskiResult out;
  out.quotient = quotient_form(m, f.a);
  out.quotient_form = definiteness(out.quotient);
  const bool ok = out.quotient_form.signature.negative_definite();
  out.verdict = status_of(ok);
  out.rank_cl = rank(m);
  return out;
}

RationalMatrix refined_form(const RefinedFormInput& in) {
  const RationalMatrix& right = in.classmap_right ? *in.classmap_right : in.classmap;
  if (in.eta_cap.rows() != in.classmap.cols())
    throw Error(ErrorCode::shape, "refined_form: eta_cap does not land in the domain of classmap");
  if (in.pairing.rows() != in.classmap.rows() || in.pairing.cols() != right.rows())
    throw Error(ErrorCode::shape, "refined_form: pairing does not match the class maps");
  if (right.cols() != in.eta_cap.cols())
    throw Error(ErrorCode::shape, "refined_form: both arguments must live in the same homology group");
  return gram(RationalMatrix(in.classmap * in.eta_cap), in.pairing, right);
}

FibrationDecomposition fibration_decompose(const FibrationGerm& g) {
  const RationalMatrix& t = g.monodromy;
  if (t.rows() != t.cols()) throw Error(ErrorCode::shape, "fibration_decompose: monodromy is not square");
  if (t.rows() % 2 != 0) throw Error(ErrorCode::shape, "fibration_decompose: generic H^1 has odd rank");
  if (!is_invertible(t)) throw Error(ErrorCode::singular, "fibration_decompose: monodromy is not invertible");

  FibrationDecomposition out;
  out.zariski = zariski_check(g.special_fiber);
  const Index r = g.special_fiber.config.r();
  out.invariants = t.rows() - rank(RationalMatrix(t - RationalMatrix::Identity(t.rows(), t.rows())));
  out.v_dim = r - 1;
  out.summands = {
      {"j_*T0[2]", -2, g.t0},
      {"j_*T1[1]", -1, out.invariants},
      {"V[0]", 0, out.v_dim},
      {"j_*T2[0]", 0, g.t2},
  };
  // The special fiber is connected, so H^0 = t0 and H^2 = Q^r.
  out.conserved = g.b1_special == out.invariants && r == out.v_dim + g.t2;
  if (out.zariski.verdict != Status::pass)
    out.verdict = Status::hypothesis_not_met;
  else
    out.verdict = status_of(out.conserved);
  return out;
}

}  // namespace perverse
