#pragma once

// Bounded cochain complexes of finite-dimensional rational spaces.
//
// Degree k carries Q^{dim(k)}; the differential d(k) : Q^{dim(k)} -> Q^{dim(k+1)}
// is a dim(k+1) x dim(k) matrix. Outside [lo, hi] every space is zero.

#include <map>
#include <vector>

#include "perverse/exactla/subspace.hpp"

namespace perverse {

class ChainComplex {
 public:
  /// The zero complex.
  ChainComplex() = default;

  /// Validates shapes and d(k+1) * d(k) = 0; throws Error(invalid_complex).
  /// An empty `differentials` list means all differentials are zero.
  ChainComplex(int lo, std::vector<Index> dims, std::vector<RationalMatrix> differentials = {});

  /// Zero differentials; the germ-level stalks are given this way.
  static ChainComplex formal(int lo, std::vector<Index> dims);
  /// Q^dim placed in the single degree k.
  static ChainComplex concentrated(int k, Index dim);

  int lo() const { return lo_; }
  /// lo() - 1 for the zero complex.
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  Index dim(int k) const;
  /// Zero matrix of the right shape outside the stored range.
  RationalMatrix d(int k) const;
  const std::vector<Index>& dims() const { return dims_; }
  Index total_dim() const;

 private:
  int lo_ = 0;
  std::vector<Index> dims_;
  std::vector<RationalMatrix> d_;
};

/// Per-degree components f(k) : source(k) -> target(k).
class ChainMap {
 public:
  /// Throws Error(invalid_map) on a shape mismatch or a failed square
  /// target.d(k) * f(k) = f(k+1) * source.d(k). Components are listed for the
  /// source degrees source.lo() .. source.hi().
  ChainMap(ChainComplex source, ChainComplex target, std::vector<RationalMatrix> components);

  static ChainMap identity(const ChainComplex& c);
  static ChainMap zero(const ChainComplex& source, const ChainComplex& target);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  RationalMatrix component(int k) const;

 private:
  ChainComplex source_;
  ChainComplex target_;
  std::vector<RationalMatrix> f_;
};

/// H^k = ker d(k) / im d(k-1) for every degree of a complex.
class Cohomology {
 public:
  explicit Cohomology(const ChainComplex& c);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(degrees_.size()) - 1; }
  Index dim(int k) const;
  /// Columns are cycles whose classes form a basis of H^k.
  RationalMatrix representatives(int k) const;
  /// Class coordinates of the cycles given as columns; throws on a non-cycle.
  RationalMatrix classes(int k, const RationalMatrix& cycles) const;
  /// Nonzero dimensions only, keyed by degree.
  std::map<int, Index> dims() const;

 private:
  struct Degree {
    Subspace cycles;
    QuotientChart chart;  // inside cycle coordinates, along the boundaries
  };
  int lo_ = 0;
  std::vector<Degree> degrees_;
};

Cohomology cohomology(const ChainComplex& c);

/// Matrix of H^k(f) in the representative bases of source and target.
RationalMatrix induced_on_cohomology(const ChainMap& f, int k);

enum class TruncationMode { at_most, at_least };

/// tau_{<=k}: degree k becomes ker d(k), higher degrees vanish.
/// tau_{>=k}: degree k becomes coker d(k-1), lower degrees vanish.
ChainComplex truncate(const ChainComplex& c, TruncationMode mode, int k);
/// tau_{<=k} c -> c.
ChainMap truncation_inclusion(const ChainComplex& c, int k);
/// c -> tau_{>=k} c.
ChainMap truncation_projection(const ChainComplex& c, int k);

/// C[l]^k = C^{k+l} with differential (-1)^l d.
ChainComplex shift(const ChainComplex& c, int l);
ChainMap shift(const ChainMap& f, int l);

/// cone(f)^k = B^k + A^{k+1} with differential [[d_B, f], [0, -d_A]] for f : A -> B.
ChainComplex cone(const ChainMap& f);
/// B -> cone(f).
ChainMap cone_inclusion(const ChainMap& f);
/// cone(f) -> A[1].
ChainMap cone_projection(const ChainMap& f);

/// D^k = (C^{-k-2r})^* with d_D(k) = (-1)^k d(-k-2r-1)^T: the model of
/// Hom(C, Q[2r]) on a smooth r-fold.
ChainComplex dualize(const ChainComplex& c, int r);

/// The complex with the cohomology of c and zero differentials.
ChainComplex minimal_model(const ChainComplex& c);

/// Same cohomology dimensions in every degree.
bool same_cohomology_dims(const ChainComplex& a, const ChainComplex& b);

}  // namespace perverse
