#pragma once

#include "perverse/exactla/matrix.hpp"

namespace perverse {

/// A linear subspace of Q^n held by a basis (the columns of basis()).
/// Equality is containment both ways, never a comparison of bases.
class Subspace {
 public:
  Subspace() = default;

  /// The span of the columns of `generators`; dependent columns are dropped.
  static Subspace span(const RationalMatrix& generators);
  static Subspace zero(Index ambient_dim);
  static Subspace whole(Index ambient_dim);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  const RationalMatrix& basis() const { return basis_; }

  bool contains(const RationalVector& v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.dim() == b.dim() && a.contains(b);
  }

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  /// Coordinates of the columns of `vectors` in this basis. Throws Error(singular)
  /// when some column lies outside the subspace.
  RationalMatrix coordinates(const RationalMatrix& vectors) const;

 private:
  Subspace(Index ambient, RationalMatrix basis) : ambient_(ambient), basis_(std::move(basis)) {}

  Index ambient_ = 0;
  RationalMatrix basis_ = RationalMatrix(0, 0);
};

/// The image m(S).
Subspace image(const RationalMatrix& m, const Subspace& s);

/// {y : <w, y> = 0 for all w in W} where <x, y> = x^T Q y.
Subspace right_orthogonal(const Subspace& w, const RationalMatrix& pairing);

/// {x : <x, w> = 0 for all w in W}.
Subspace left_orthogonal(const Subspace& w, const RationalMatrix& pairing);

/// Gram matrix B^T Q C of two bases under the pairing.
RationalMatrix gram(const RationalMatrix& left, const RationalMatrix& pairing, const RationalMatrix& right);

struct RankKernelImage {
  Index rank = 0;
  Subspace kernel;
  Subspace image;
};

RankKernelImage rank_kernel_image(const RationalMatrix& m);

/// A complement of `sub` inside Q^n spanned by standard basis vectors, together
/// with the projection onto the complement coordinates along `sub`.
struct QuotientChart {
  RationalMatrix section;     // n x q, columns are standard basis vectors
  RationalMatrix projection;  // q x n, projection * section = I, projection * sub = 0
};

QuotientChart quotient_chart(const Subspace& sub);

}  // namespace perverse
