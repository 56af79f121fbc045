#pragma once

// Two-stratum germs: a point y inside an n-dimensional Y with a proper map
// f : X -> Y that is an isomorphism over Y - y. Every complex here is a stalk
// at y; degree conventions follow Rf_* Q_X[n], so H^j(D) sits in degree j - n.

#include <map>
#include <string>
#include <vector>

#include "perverse/complexes.hpp"
#include "perverse/forms.hpp"

namespace perverse {

/// Cohomology of the link of y, degrees 0 .. 2n-1.
struct LinkCohomology {
  int n = 0;
  std::vector<Index> dims;
};

/// Throws Error(shape) unless dims has length 2n and dims[0] >= 1.
void validate(const LinkCohomology& link);

/// Total space of the circle bundle with Euler class e over a base with the
/// given Betti numbers: h^k = dim coker(e : H^{k-2} -> H^k) + dim ker(e : H^{k-1} -> H^{k+1}).
/// euler_maps[k] is the cup product H^k -> H^{k+2}; an empty list means e = 0.
std::vector<Index> gysin_s1_bundle(const std::vector<Index>& base_dims, const std::vector<RationalMatrix>& euler_maps);

/// The stalk of IC at y: tau_{<=-1} of the Rj_* stalk, so degree k in
/// [-n, -1] carries dims[k + n].
ChainComplex ic_isolated(const LinkCohomology& link);

/// stalk = i^* Rf_* Q[n], link_complex = stalk of Rj_* j^* Rf_* Q[n],
/// attach = the adjunction map between them.
class GermDataset {
 public:
  GermDataset(int n, ChainMap attach);

  /// Builds the germ from the local cohomology K = i^! Rf_* Q[n] (with
  /// H_{2n-i}(D) in degree i - n) and the map rho : K -> stalk. The link
  /// complex is cone(rho) and attach is the cone inclusion.
  static GermDataset from_local_cohomology(int n, const ChainMap& rho);

  int n() const { return n_; }
  const ChainComplex& stalk() const { return attach_.source(); }
  const ChainComplex& link_complex() const { return attach_.target(); }
  const ChainMap& attach() const { return attach_; }

 private:
  int n_;
  ChainMap attach_;
};

/// Stalk at y of pperv-tau_{<=m} Rf_* Q[n].
///
/// tau': for m < 0 the open part is killed, leaving cone(attach)[-1] (the
/// local cohomology); for m >= 0 nothing changes. tau'': cone of the map to
/// i_* tau_{>m} i^*, shifted by -1. Throws Error(hypothesis) when the link
/// cohomology leaves [-n, n-1], since then j^* is not a shifted local system.
ChainComplex perverse_truncate_point_germ(const GermDataset& g, int m);

struct Summand {
  std::string name;
  std::map<int, Index> stalk_dims;  // degree -> dim at y
};

struct SplittingResult {
  bool split = false;
  std::vector<Summand> summands;  // IC_U(L) and H^0(P)_y[0] when split
};

/// Split iff the map H^0(P) -> link is zero.
SplittingResult splitting_criterion(Index h0p_dim, const RationalMatrix& map_to_link);

struct SurfaceGerm {
  CurveConfig config;
  Index b1D = 0;  // dim H^1(D)
};

struct SurfaceDecomposition {
  bool split = false;
  LinkCohomology link;
  std::map<int, Index> ic_stalk;
  Index skyscraper_dim = 0;
  bool rational_homology_manifold = false;  // H^{-1} of the IC stalk vanishes
  bool conserved = false;                   // summand stalks add up to H^*(D)
};

/// The obstruction rho : H^2(D) -> coker(m) vanishes iff det m != 0; then
/// Rf_* Q[2] = IC_Y + R^2 f_* Q[0].
SurfaceDecomposition decompose_surface_germ(const SurfaceGerm& s);

}  // namespace perverse
