#pragma once

// Intersection-form criteria for curve configurations and the stalk
// bookkeeping of a degenerating curve fibration.

#include <optional>
#include <string>
#include <vector>

#include "perverse/exactla/signature.hpp"
#include "perverse/exactla/subspace.hpp"

namespace perverse {

/// Exceptional curves D_1..D_r with m(h, k) = D_h . D_k.
struct CurveConfig {
  RationalMatrix m;

  Index r() const { return m.rows(); }
};

/// F = sum_k a_k D_k with every a_k > 0.
struct FiberCycle {
  CurveConfig config;
  RationalVector a;
};

struct GrauertResult {
  Status verdict = Status::fail;
  DefinitenessReport form;
  bool class_map_iso = false;  // det m != 0
};

/// Passes iff the intersection matrix is negative definite.
GrauertResult grauert_check(const CurveConfig& c);

struct ZariskiResult {
  Status verdict = Status::fail;
  Index rank_cl = 0;
  RationalMatrix quotient;
  DefinitenessReport quotient_form;
};

/// Requires m a = 0 (throws Error(not_fiber_cycle) otherwise) and passes iff
/// the form induced on Q^r / span(a) is negative definite.
ZariskiResult zariski_check(const FiberCycle& f);

/// The form I_{l,k}(cap eta^k x, y) on H_{n-l+k} of a fiber.
///
/// classmap:       H_{n-l-k} -> H^{n-l-k}(slice)
/// eta_cap:        H_{n-l+k} -> H_{n-l-k}
/// pairing:        H^{n-l-k}(slice) x H^{n-l+k}(slice) -> Q
/// classmap_right: H_{n-l+k} -> H^{n-l+k}(slice); defaults to classmap,
///                 which only type-checks when k = 0.
struct RefinedFormInput {
  int l = 0;
  int k = 0;
  RationalMatrix classmap;
  RationalMatrix pairing;
  RationalMatrix eta_cap;
  std::optional<RationalMatrix> classmap_right;
};

/// (classmap * eta_cap)^T * pairing * classmap_right.
RationalMatrix refined_form(const RefinedFormInput& in);

/// Germ of a proper curve fibration over a disc, smooth away from 0.
struct FibrationGerm {
  Index t0 = 1;               // rank of R^0 on the punctured disc (connected fibers)
  Index t2 = 1;               // rank of R^2 on the punctured disc
  RationalMatrix monodromy;   // on H^1 of the generic fiber
  FiberCycle special_fiber;
  Index b1_special = 0;       // dim H^1 of the special fiber
};

struct StalkSummand {
  std::string name;  // "j_*T0[2]", "j_*T1[1]", "V[0]", "j_*T2[0]"
  int degree = 0;    // degree of the stalk at the critical value
  Index dim = 0;
};

struct FibrationDecomposition {
  Status verdict = Status::fail;
  ZariskiResult zariski;
  Index invariants = 0;  // dim ker(T - I)
  Index v_dim = 0;       // r - 1
  std::vector<StalkSummand> summands;
  bool conserved = false;  // summand dims add up to the special-fiber cohomology
};

/// The decomposition j_*T0[2] + j_*T1[1] + V[0] + j_*T2[0] at the critical
/// value. hypothesis_not_met when the Zariski check fails.
FibrationDecomposition fibration_decompose(const FibrationGerm& g);

}  // namespace perverse
