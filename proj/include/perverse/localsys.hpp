#pragma once

// Local systems on the complement of two crossing lines in C^2, i.e.
// Z^2-modules V with commuting invertible monodromies T1, T2.

#include "perverse/complexes.hpp"

namespace perverse {

struct TorusLocalSystem {
  RationalMatrix t1;
  RationalMatrix t2;

  Index dim() const { return t1.rows(); }
  RationalMatrix n1() const { return t1 - RationalMatrix::Identity(dim(), dim()); }
  RationalMatrix n2() const { return t2 - RationalMatrix::Identity(dim(), dim()); }
};

/// Throws Error(shape), Error(singular) or Error(invalid_map) when the
/// monodromies are not square of equal size, not invertible, or do not commute.
void validate(const TorusLocalSystem& ls);

/// 0 -> V -phi-> V + V -psi-> V -> 0 with phi(v) = (N1 v, N2 v) and
/// psi(v1, v2) = N2 v1 - N1 v2, in degrees 0, 1, 2.
ChainComplex koszul_complex(const TorusLocalSystem& ls);

struct KoszulCohomology {
  Index h0 = 0;
  Index h1 = 0;
  Index h2 = 0;
  RationalMatrix h0_basis;             // V-valued invariants
  RationalMatrix h1_representatives;   // cocycles (v1; v2)
  RationalMatrix h2_representatives;
};

KoszulCohomology koszul_cohomology(const TorusLocalSystem& ls);

/// Stalk dimensions of IC(L) at the crossing point.
struct NormalCrossingStalk {
  Index degree_minus2 = 0;
  Index degree_minus1 = 0;

  friend bool operator==(const NormalCrossingStalk&, const NormalCrossingStalk&) = default;
};

/// degree -2: ker N1 cap ker N2. degree -1: {(N1 v1, N2 v2) : N1 N2 (v1 - v2) = 0}
/// modulo {(N1 v, N2 v)}, both built as subspaces of V + V.
NormalCrossingStalk ic_stalk_normal_crossing(const TorusLocalSystem& ls);

/// Independent route through j_* L -> Rj_* L -> H^1(Rj_* L)[-1]: degree -1 is
/// the kernel of H^1_Koszul -> coker N1 + coker N2, (v1, v2) -> ([v1], [v2]).
NormalCrossingStalk ic_stalk_oracle(const TorusLocalSystem& ls);

}  // namespace perverse
