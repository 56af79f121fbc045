#pragma once

#include <string_view>

#include "perverse/exactla/matrix.hpp"

namespace perverse {

/// Inertia (n+, n-, n0) of a symmetric rational form.
struct Signature {
  Index positive = 0;
  Index negative = 0;
  Index zero = 0;

  Index size() const { return positive + negative + zero; }
  bool nondegenerate() const { return zero == 0; }
  // Vacuously true on the zero-dimensional space.
  bool negative_definite() const { return negative == size(); }
  bool positive_definite() const { return positive == size(); }

  friend bool operator==(const Signature&, const Signature&) = default;
};

enum class Definiteness {
  empty,
  negative_definite,
  negative_semidefinite,
  indefinite,
  positive_semidefinite,
  positive_definite,
  degenerate,  // the zero form on a nonzero space
};

std::string_view to_string(Definiteness d);

struct DefinitenessReport {
  Definiteness verdict = Definiteness::empty;
  Signature signature;
};

/// Inertia by symmetric congruence diagonalization. When no diagonal pivot is
/// left but an off-diagonal entry a_ij is, row/column j is added to i first,
/// which makes the new a_ii = 2 a_ij nonzero.
Signature signature(const RationalMatrix& m);

DefinitenessReport definiteness(const RationalMatrix& m);

/// The form induced by m on Q^r / <v>, for v in the radical of m. The chart
/// sends v to the last basis vector and keeps the other standard vectors, so
/// the result is m with the row and column of v's first nonzero coordinate
/// removed.
RationalMatrix quotient_form(const RationalMatrix& m, const RationalVector& v);

}  // namespace perverse
