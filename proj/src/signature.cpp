#include "perverse/exactla/signature.hpp"

namespace perverse {

std::string_view to_string(Definiteness d) {
  switch (d) {
    case Definiteness::empty: return "empty";
    case Definiteness::negative_definite: return "negative_definite";
    case Definiteness::negative_semidefinite: return "negative_semidefinite";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::positive_semidefinite: return "positive_semidefinite";
    case Definiteness::positive_definite: return "positive_definite";
    case Definiteness::degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

void swap_symmetric(RationalMatrix& a, Index i, Index j) {
  if (i == j) return;
  a.row(i).swap(a.row(j));
  a.col(i).swap(a.col(j));
}

}  // namespace

Signature signature(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::shape, "signature: matrix is not square");
  if (!is_symmetric(m)) throw Error(ErrorCode::not_symmetric, "signature: matrix is not symmetric");

  RationalMatrix a = m;
  const Index n = a.rows();
  Signature s;
  for (Index k = 0; k < n; ++k) {
    Index pivot = k;
    while (pivot < n && a(pivot, pivot) == 0) ++pivot;
    if (pivot == n) {
      Index pi = -1;
      Index pj = -1;
      for (Index i = k; i < n && pi < 0; ++i)
        for (Index j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) {
        s.zero += n - k;
        break;
      }
      a.row(pi) += a.row(pj);
      a.col(pi) += a.col(pj);
      pivot = pi;
    }
    swap_symmetric(a, k, pivot);
    const Rational d = a(k, k);
    for (Index r = k + 1; r < n; ++r) {
      if (a(r, k) == 0) continue;
      const Rational f = a(r, k) / d;
      a.row(r).tail(n - k) -= f * a.row(k).tail(n - k);
      a.col(r).tail(n - k) -= f * a.col(k).tail(n - k);
    }
    if (d > 0)
      ++s.positive;
    else
      ++s.negative;
  }
  return s;
}

DefinitenessReport definiteness(const RationalMatrix& m) {
  DefinitenessReport r;
  r.signature = signature(m);
  const Signature& s = r.signature;
  const Index n = s.size();
  if (n == 0)
    r.verdict = Definiteness::empty;
  else if (s.negative == n)
    r.verdict = Definiteness::negative_definite;
  else if (s.positive == n)
    r.verdict = Definiteness::positive_definite;
  else if (s.zero == n)
    r.verdict = Definiteness::degenerate;
  else if (s.positive == 0)
    r.verdict = Definiteness::negative_semidefinite;
  else if (s.negative == 0)
    r.verdict = Definiteness::positive_semidefinite;
  else
    r.verdict = Definiteness::indefinite;
  return r;
}

RationalMatrix quotient_form(const RationalMatrix& m, const RationalVector& v) {
  if (m.rows() != m.cols() || m.rows() != v.rows()) throw Error(ErrorCode::shape, "quotient_form: shape mismatch");
  if (!is_symmetric(m)) throw Error(ErrorCode::not_symmetric, "quotient_form: form is not symmetric");
  Index p = 0;
  while (p < v.rows() && v(p) == 0) ++p;
  if (p == v.rows()) throw Error(ErrorCode::not_in_radical, "quotient_form: v is zero");
  if (!is_zero(m * v)) throw Error(ErrorCode::not_in_radical, "quotient_form: v is not in the radical (m v != 0)");

  // Basis e_i (i != p) followed by v; v pairs to zero with everything.
  const Index n = m.rows();
  RationalMatrix q(n - 1, n - 1);
  for (Index i = 0, qi = 0; i < n; ++i) {
    if (i == p) continue;
    for (Index j = 0, qj = 0; j < n; ++j) {
      if (j == p) continue;
      q(qi, qj++) = m(i, j);
    }
    ++qi;
  }
  return q;
}

}  // namespace perverse
