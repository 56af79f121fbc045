#pragma once

// Cohomology rings of point blowups X = Bl_{p_1..p_s}(P^k1 x P^k2), n = k1 + k2.
//
// H^{2d} has the monomials a^i b^j (i + j = d, i <= k1, j <= k2) followed by
// E_1^d, ..., E_s^d when 1 <= d <= n-1. Cup products: monomials multiply as
// usual, E_t^u E_t^v = E_t^{u+v} below the top, E_t^n = (-1)^{n-1} [pt], and
// E_t times E_t' (t != t') or any monomial of positive degree is 0. The pairing reads off the coefficient of [pt] = a^k1 b^k2.
// Optionally a symplectic block of rank 2s is added in the middle degree
// (n odd), decoupled from everything else: it models H_3(D) classes.
//
// eta and L are cup products with x a + y b + z (E_1 + ... + E_s).

#include <algorithm>
#include <array>
#include <vector>

#include "perverse/lefschetz.hpp"
#include "support.hpp"

namespace perverse::test {

struct BlowupModel {
  int k1 = 0;
  int k2 = 0;
  int points = 1;
  Index middle_rank = 0;  // extra odd-degree classes, n odd only
  GradedPackage g;

  int n() const { return k1 + k2; }
  /// Index of a^i b^j inside H^{2(i+j)}.
  Index monomial(int i, int j) const;
  /// Index of E_t^d inside H^{2d}.
  Index e_power(int d, int t = 0) const;
  RationalVector basis_vector(int degree, Index index) const;
};

namespace detail {

inline std::vector<std::array<int, 2>> monomials(int k1, int k2, int d) {
  std::vector<std::array<int, 2>> out;
  for (int i = std::min(d, k1); i >= 0; --i)
    if (d - i <= k2) out.push_back({i, d - i});
  return out;
}

}  // namespace detail

inline Index BlowupModel::monomial(int i, int j) const {
  const auto m = detail::monomials(k1, k2, i + j);
  for (std::size_t s = 0; s < m.size(); ++s)
    if (m[s][0] == i && m[s][1] == j) return static_cast<Index>(s);
  return -1;
}

inline Index BlowupModel::e_power(int d, int t) const {
  return static_cast<Index>(detail::monomials(k1, k2, d).size()) + t;
}

inline RationalVector BlowupModel::basis_vector(int degree, Index index) const {
  RationalVector v = RationalVector::Constant(g.dim(degree), Rational(0));
  v(index) = 1;
  return v;
}

/// Coefficients (x, y, z) of x a + y b + z E.
using DivisorClass = std::array<int, 3>;

inline BlowupModel blowup_model(int k1, int k2, DivisorClass eta, DivisorClass l, int points = 1,
                                Index middle_rank = 0) {
  BlowupModel m;
  m.k1 = k1;
  m.k2 = k2;
  m.points = points;
  m.middle_rank = middle_rank;
  const int n = k1 + k2;
  GradedPackage& g = m.g;
  g.n = n;

  // Basis labels per even degree: {i, j, e, t}, e > 0 meaning E_t^e.
  using Label = std::array<int, 4>;
  std::vector<std::vector<Label>> labels(static_cast<std::size_t>(n + 1));
  for (int d = 0; d <= n; ++d) {
    for (const auto& [i, j] : detail::monomials(k1, k2, d)) labels[static_cast<std::size_t>(d)].push_back({i, j, 0, 0});
    if (d >= 1 && d <= n - 1)
      for (int t = 0; t < points; ++t) labels[static_cast<std::size_t>(d)].push_back({0, 0, d, t});
  }
  for (int k = 0; k <= 2 * n; ++k) {
    if (k % 2 == 0) g.dims.push_back(static_cast<Index>(labels[static_cast<std::size_t>(k / 2)].size()));
    else g.dims.push_back(k == n ? 2 * middle_rank : 0);
  }

  // Product of two labels as coordinates in degree d1 + d2.
  auto product = [&](const Label& u, const Label& v, int d) -> RationalVector {
    const auto& target = labels[static_cast<std::size_t>(d)];
    RationalVector out = RationalVector::Constant(static_cast<Index>(target.size()), Rational(0));
    auto put = [&](const Label& w, int c) {
      for (std::size_t s = 0; s < target.size(); ++s)
        if (target[s] == w) out(static_cast<Index>(s)) += c;
    };
    const bool u_one = u == Label{0, 0, 0, 0};
    const bool v_one = v == Label{0, 0, 0, 0};
    if (u_one) put(v, 1);
    else if (v_one) put(u, 1);
    else if (u[2] > 0 && v[2] > 0 && u[3] == v[3]) {
      if (u[2] + v[2] < n) put({0, 0, u[2] + v[2], u[3]}, 1);
      else if (u[2] + v[2] == n) put({k1, k2, 0, 0}, n % 2 == 1 ? 1 : -1);
    } else if (u[2] == 0 && v[2] == 0 && u[0] + v[0] <= k1 && u[1] + v[1] <= k2) {
      put({u[0] + v[0], u[1] + v[1], 0, 0}, 1);
    }
    return out;
  };

  auto cup_with = [&](DivisorClass c, int k) -> RationalMatrix {
    RationalMatrix out = zeros<Rational>(g.dim(k + 2), g.dim(k));
    if (k % 2 == 1) return out;
    const int d = k / 2;
    const auto& source = labels[static_cast<std::size_t>(d)];
    std::vector<std::pair<Label, int>> terms{{{1, 0, 0, 0}, c[0]}, {{0, 1, 0, 0}, c[1]}};
    for (int t = 0; t < points; ++t) terms.push_back({{0, 0, 1, t}, c[2]});
    for (std::size_t s = 0; s < source.size(); ++s)
      for (const auto& [t, coeff] : terms) {
        if (coeff == 0 || (t[0] > k1) || (t[1] > k2)) continue;
        out.col(static_cast<Index>(s)) += Rational(coeff) * product(source[s], t, d + 1);
      }
    return out;
  };
  for (int k = 0; k <= 2 * n - 2; ++k) {
    g.eta.push_back(cup_with(eta, k));
    g.L.push_back(cup_with(l, k));
  }

  for (int k = 0; k <= 2 * n; ++k) {
    RationalMatrix p = zeros<Rational>(g.dim(k), g.dim(2 * n - k));
    if (k % 2 == 0) {
      const auto& left = labels[static_cast<std::size_t>(k / 2)];
      const auto& right = labels[static_cast<std::size_t>(n - k / 2)];
      for (std::size_t s = 0; s < left.size(); ++s)
        for (std::size_t t = 0; t < right.size(); ++t) {
          const RationalVector top = product(left[s], right[t], n);
          p(static_cast<Index>(s), static_cast<Index>(t)) = top(0);
        }
    } else if (k == n) {
      for (Index s = 0; s < middle_rank; ++s) {
        p(2 * s, 2 * s + 1) = 1;
        p(2 * s + 1, 2 * s) = -1;
      }
    }
    g.pairing.push_back(p);
  }
  return m;
}

/// A direct sum of Lefschetz strings of dimension n, in a random basis per
/// degree. Each entry of `primitive_degrees` adds the string
/// e_m -> e_{m+2} -> ... -> e_{2n-m} with <e_{m+2p}, e_{2n-m-2p}> = c;
/// odd m must come in pairs, which are joined into a symplectic pair of
/// strings. eta moves along the strings and L = lambda eta.
inline GradedPackage lefschetz_strings(int n, std::vector<int> primitive_degrees, Rng& rng, int lambda = 2) {
  std::sort(primitive_degrees.begin(), primitive_degrees.end());
  GradedPackage g;
  g.n = n;
  g.dims.assign(static_cast<std::size_t>(2 * n + 1), 0);
  // slot[s][p] = index of the p-th vector of string s inside its degree.
  std::vector<std::vector<Index>> slot;
  for (int m : primitive_degrees) {
    std::vector<Index> here;
    for (int d = m; d <= 2 * n - m; d += 2) here.push_back(g.dims[static_cast<std::size_t>(d)]++);
    slot.push_back(here);
  }
  for (int k = 0; k <= 2 * n - 2; ++k) g.eta.push_back(zeros<Rational>(g.dim(k + 2), g.dim(k)));
  for (int k = 0; k <= 2 * n; ++k) g.pairing.push_back(zeros<Rational>(g.dim(k), g.dim(2 * n - k)));
  for (std::size_t s = 0; s < primitive_degrees.size(); ++s) {
    const int m = primitive_degrees[s];
    const int len = n - m + 1;
    for (int p = 0; p + 1 < len; ++p)
      g.eta[static_cast<std::size_t>(m + 2 * p)](slot[s][static_cast<std::size_t>(p + 1)], slot[s][static_cast<std::size_t>(p)]) = 1;
  }
  for (std::size_t s = 0; s < primitive_degrees.size(); ++s) {
    const int m = primitive_degrees[s];
    const int len = n - m + 1;
    if (m % 2 == 0) {
      const int c = std::array<int, 4>{-2, -1, 1, 3}[static_cast<std::size_t>(rng.integer(0, 3))];
      for (int p = 0; p < len; ++p)
        g.pairing[static_cast<std::size_t>(m + 2 * p)](slot[s][static_cast<std::size_t>(p)], slot[s][static_cast<std::size_t>(len - 1 - p)]) = c;
    } else {
      if (s + 1 >= primitive_degrees.size() || primitive_degrees[s + 1] != m)
        throw Error(ErrorCode::shape, "lefschetz_strings: odd strings come in pairs");
      const int c = rng.coin() ? 1 : -1;
      for (int p = 0; p < len; ++p) {
        const int d = m + 2 * p;
        g.pairing[static_cast<std::size_t>(d)](slot[s][static_cast<std::size_t>(p)], slot[s + 1][static_cast<std::size_t>(len - 1 - p)]) = c;
        g.pairing[static_cast<std::size_t>(d)](slot[s + 1][static_cast<std::size_t>(p)], slot[s][static_cast<std::size_t>(len - 1 - p)]) = -c;
      }
      ++s;
    }
  }
  // x' = S_k x in every degree.
  std::vector<RationalMatrix> change, back;
  for (int k = 0; k <= 2 * n; ++k) {
    change.push_back(rng.invertible(g.dim(k)));
    back.push_back(inverse<Rational>(change.back()));
  }
  for (int k = 0; k <= 2 * n - 2; ++k) {
    const auto u = static_cast<std::size_t>(k);
    g.eta[u] = change[u + 2] * g.eta[u] * back[u];
    g.L.push_back(Rational(lambda) * g.eta[u]);
  }
  for (int k = 0; k <= 2 * n; ++k) {
    const auto u = static_cast<std::size_t>(k);
    g.pairing[u] = back[u].transpose() * g.pairing[u] * back[static_cast<std::size_t>(2 * n - k)];
  }
  return g;
}

/// Primitive degrees for a random package: even degrees freely, odd ones in pairs.
inline std::vector<int> random_strings(int n, Rng& rng) {
  std::vector<int> out;
  for (int m = 0; m <= n; ++m) {
    const int copies = rng.integer(0, 2);
    for (int c = 0; c < copies; ++c) {
      out.push_back(m);
      if (m % 2 == 1) out.push_back(m);
    }
  }
  return out;
}

/// Bl_p P^2 with L = H (the blowdown) and eta = 2H - E.
inline BlowupModel surface_model() { return blowup_model(2, 0, {2, 0, -1}, {1, 0, 0}); }

/// Bl_p P^3 with L = H and eta = 2H - E, plus middle_rank symplectic pairs
/// standing in for H_3(D).
inline BlowupModel threefold_model(Index middle_rank = 0, int points = 1) {
  return blowup_model(3, 0, {2, 0, -1}, {1, 0, 0}, points, middle_rank);
}

/// Bl_p(P^2 x P^2) with L = a + b and eta = 2a + 3b - E.
inline BlowupModel fourfold_model() { return blowup_model(2, 2, {2, 3, -1}, {1, 1, 0}); }

/// The resolution package of the threefold model: D = E_1 + ... + E_s, each a
/// P^2, with H_3(D) given by the symplectic block when present.
inline ResolutionPackage3 threefold_resolution(Index middle_rank = 0, int points = 1) {
  const BlowupModel m = threefold_model(middle_rank, points);
  ResolutionPackage3 p;
  p.g = m.g;
  p.c4 = zeros<Rational>(p.g.dim(2), points);
  for (int t = 0; t < points; ++t) p.c4.col(t) = m.basis_vector(2, m.e_power(1, t));
  p.r4 = p.c4.transpose() * p.g.pairing[2];
  p.c3 = identity<Rational>(2 * middle_rank);
  p.eta_cap = gram(p.c4, p.g.pairing[2], p.g.eta[2] * p.c4);
  p.h3_pairing = gram(p.c3, p.g.pairing[3], p.c3);
  return p;
}

inline ResolutionPackage4 fourfold_resolution() {
  const BlowupModel m = fourfold_model();
  ResolutionPackage4 p;
  p.g = m.g;
  p.c6 = m.basis_vector(2, m.e_power(1));
  p.c5 = RationalMatrix(0, 0);
  p.r5 = RationalMatrix(0, 0);
  p.r6 = p.c6.transpose() * p.g.pairing[2];
  p.eta2_cap = gram(p.c6, p.g.pairing[2], p.g.eta[4] * p.g.eta[2] * p.c6);
  return p;
}

/// V1 (x) V2 for two 2-dimensional Lefschetz strings, eta acting on the first
/// factor and L on the second, n = 2: the basis vector u_a (x) w_b sits in
/// perverse degree a and cohomological degree 2 + a + b.
inline BigradedPackage sl2_sl2_toy() {
  BigradedPackage b;
  b.n = 2;
  for (int a : {-1, 1})
    for (int c : {-1, 1}) {
      const Bidegree d{2 + a + c, a};
      b.dims[d] = 1;
      b.pairing[d] = RationalMatrix::Constant(1, 1, Rational(1));
    }
  b.eta[{0, -1}] = RationalMatrix::Constant(1, 1, Rational(1));
  b.eta[{2, -1}] = RationalMatrix::Constant(1, 1, Rational(1));
  b.L[{0, -1}] = RationalMatrix::Constant(1, 1, Rational(1));
  b.L[{2, 1}] = RationalMatrix::Constant(1, 1, Rational(1));
  return b;
}

}  // namespace perverse::test
