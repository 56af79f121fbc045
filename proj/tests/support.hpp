#pragma once

// Shared helpers for the test binaries: matrix literals and a seeded RNG.

#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <random>
#include <string>

#include "perverse/complexes.hpp"

namespace perverse::test {

inline RationalMatrix mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  RationalMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline RationalVector vec(std::initializer_list<Rational> xs) {
  RationalVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline RationalMatrix empty(Index rows = 0, Index cols = 0) { return RationalMatrix(rows, cols); }

/// PERVERSE_KIT_SEED overrides the default seed for randomized corpora.
inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("PERVERSE_KIT_SEED")) return std::stoull(s);
  return 20240611ULL;
}

class Rng {
 public:
  explicit Rng(std::uint64_t salt = 0) : engine_(test_seed() ^ (salt * 0x9E3779B97F4A7C15ULL)) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

  RationalMatrix matrix(Index rows, Index cols, int lo = -3, int hi = 3, double zero_p = 0.3) {
    RationalMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = coin(zero_p) ? 0 : integer(lo, hi);
    return m;
  }

  RationalMatrix symmetric(Index n, int lo = -3, int hi = 3) {
    RationalMatrix m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) m(i, j) = m(j, i) = coin(0.3) ? 0 : integer(lo, hi);
    return m;
  }

  /// Unit lower triangular times unit upper triangular: always invertible.
  RationalMatrix invertible(Index n) {
    RationalMatrix lower = identity<Rational>(n);
    RationalMatrix upper = identity<Rational>(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < i; ++j) {
        lower(i, j) = integer(-2, 2);
        upper(j, i) = integer(-2, 2);
      }
    return lower * upper;
  }

  /// d(k) = R * (projection along im d(k-1)), so d o d = 0 by construction.
  ChainComplex complex(int lo, int length, Index max_dim, double zero_d = 0.2) {
    std::vector<Index> dims;
    for (int i = 0; i < length; ++i) dims.push_back(integer(0, static_cast<int>(max_dim)));
    std::vector<RationalMatrix> ds;
    RationalMatrix previous = RationalMatrix::Zero(length > 0 ? dims[0] : 0, 0);
    for (int i = 0; i + 1 < length; ++i) {
      const auto chart = quotient_chart(Subspace::span(previous));
      RationalMatrix d = coin(zero_d) ? RationalMatrix::Zero(dims[i + 1], dims[i])
                                      : RationalMatrix(matrix(dims[i + 1], chart.section.cols(), -2, 2) * chart.projection);
      ds.push_back(d);
      previous = d;
    }
    return ChainComplex(lo, std::move(dims), std::move(ds));
  }

  /// A = S J S^{-1} with Jordan blocks for eigenvalues in {1, -1, 2}.
  RationalMatrix jordan_conjugate(Index n) {
    RationalMatrix j = RationalMatrix::Zero(n, n);
    const int eigen[] = {1, -1, 2};
    Index i = 0;
    while (i < n) {
      const Index block = std::min<Index>(n - i, integer(1, 3));
      const int lambda = coin(0.6) ? 1 : eigen[integer(0, 2)];
      for (Index b = 0; b < block; ++b) {
        j(i + b, i + b) = lambda;
        if (b + 1 < block) j(i + b, i + b + 1) = 1;
      }
      i += block;
    }
    const RationalMatrix s = invertible(n);
    return s * j * inverse<Rational>(s);
  }

  /// p(A) with p = 1 + (x - 1) r(x) (so p(1) = 1) or a random polynomial,
  /// redrawn until p(A) is invertible.
  RationalMatrix invertible_polynomial_in(const RationalMatrix& a) {
    const Index n = a.rows();
    const RationalMatrix id = RationalMatrix::Identity(n, n);
    for (;;) {
      RationalMatrix r = RationalMatrix::Zero(n, n);
      RationalMatrix power = id;
      for (int k = 0, deg = integer(0, 2); k <= deg; ++k) {
        r += Rational(integer(-2, 2)) * power;
        power = power * a;
      }
      RationalMatrix p = coin(0.7) ? RationalMatrix(id + (a - id) * r) : RationalMatrix(Rational(integer(1, 2)) * id + a * r);
      if (is_invertible(p)) return p;
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace perverse::test
