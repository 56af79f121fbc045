#include "perverse/lefschetz.hpp"

#include <fmt/format.h>

#include <set>

namespace perverse {
namespace {

RationalMatrix zero(Index rows, Index cols) { return zeros<Rational>(rows, cols); }

bool is_invertible_form(const RationalMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

std::optional<Signature> signature_if_symmetric(const RationalMatrix& m) {
  if (!is_symmetric(m)) return std::nullopt;
  return signature(m);
}

void expect_shape(const RationalMatrix& m, Index rows, Index cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols)
    throw Error(ErrorCode::shape, fmt::format("{}: expected {}x{}, got {}x{}", what, rows, cols, m.rows(), m.cols()));
}

RationalMatrix concatenate(const std::vector<const Subspace*>& parts, Index ambient) {
  Index cols = 0;
  for (const auto* s : parts) cols += s->dim();
  RationalMatrix out(ambient, cols);
  Index at = 0;
  for (const auto* s : parts) {
    if (s->dim() > 0) out.middleCols(at, s->dim()) = s->basis();
    at += s->dim();
  }
  return out;
}

Subspace kernel(const RationalMatrix& m) { return Subspace::span(kernel_basis(m)); }

}  // namespace

std::string_view to_string(Operator op) { return op == Operator::eta ? "eta" : "L"; }

Index GradedPackage::dim(int k) const {
  if (k < 0 || k > 2 * n || static_cast<std::size_t>(k) >= dims.size()) return 0;
  return dims[static_cast<std::size_t>(k)];
}

RationalMatrix GradedPackage::op(Operator o, int k) const {
  const auto& maps = o == Operator::eta ? eta : L;
  if (k < 0 || k > 2 * n - 2 || static_cast<std::size_t>(k) >= maps.size()) return zero(dim(k + 2), dim(k));
  return maps[static_cast<std::size_t>(k)];
}

RationalMatrix GradedPackage::power(Operator o, int k, int i) const {
  RationalMatrix out = identity<Rational>(dim(k));
  for (int s = 0; s < i; ++s) out = op(o, k + 2 * s) * out;
  return out;
}

std::vector<std::string> package_violations(const GradedPackage& g) {
  if (g.n < 0 || g.dims.size() != static_cast<std::size_t>(2 * g.n + 1))
    throw Error(ErrorCode::shape, "graded package: expected 2n + 1 dimensions");
  for (Index d : g.dims)
    if (d < 0) throw Error(ErrorCode::shape, "graded package: negative dimension");
  const std::size_t ops = static_cast<std::size_t>(std::max(0, 2 * g.n - 1));
  if (g.eta.size() != ops || g.L.size() != ops)
    throw Error(ErrorCode::shape, "graded package: expected one eta and one L per degree 0 .. 2n-2");
  if (g.pairing.size() != g.dims.size()) throw Error(ErrorCode::shape, "graded package: expected one pairing per degree");
  for (int k = 0; k <= 2 * g.n - 2; ++k) {
    expect_shape(g.eta[static_cast<std::size_t>(k)], g.dim(k + 2), g.dim(k), fmt::format("eta on H^{}", k));
    expect_shape(g.L[static_cast<std::size_t>(k)], g.dim(k + 2), g.dim(k), fmt::format("L on H^{}", k));
  }
  for (int k = 0; k <= 2 * g.n; ++k)
    expect_shape(g.pairing[static_cast<std::size_t>(k)], g.dim(k), g.dim(2 * g.n - k), fmt::format("pairing on H^{}", k));

  std::vector<std::string> out;
  const auto pairing = [&](int k) { return g.pairing[static_cast<std::size_t>(k)]; };
  for (int k = 0; k <= 2 * g.n - 4; ++k)
    if (g.op(Operator::eta, k + 2) * g.op(Operator::L, k) != g.op(Operator::L, k + 2) * g.op(Operator::eta, k))
      out.push_back(fmt::format("eta L = L eta fails on H^{}", k));
  for (Operator o : {Operator::eta, Operator::L})
    for (int k = 0; k <= 2 * g.n - 2; ++k)
      if (g.op(o, k).transpose() * pairing(k + 2) != pairing(k) * g.op(o, 2 * g.n - k - 2))
        out.push_back(fmt::format("<{0} x, y> = <x, {0} y> fails for x in H^{1}", to_string(o), k));
  for (int k = 0; k <= 2 * g.n; ++k) {
    const RationalMatrix mirrored = (k % 2 == 0 ? Rational(1) : Rational(-1)) * pairing(k).transpose();
    if (pairing(2 * g.n - k) != mirrored) out.push_back(fmt::format("graded symmetry of the pairing fails on H^{}", k));
    if (!is_invertible_form(pairing(k))) out.push_back(fmt::format("pairing on H^{} is degenerate", k));
  }
  return out;
}

HardLefschetzResult hard_lefschetz_check(const GradedPackage& g, Operator op) {
  package_violations(g);
  HardLefschetzResult out;
  bool all = true;
  for (int i = 0; i <= g.n; ++i) {
    LefschetzStep s;
    s.i = i;
    s.source_dim = g.dim(g.n - i);
    s.target_dim = g.dim(g.n + i);
    s.rank = rank(g.power(op, g.n - i, i));
    s.iso = s.source_dim == s.target_dim && s.rank == s.source_dim;
    all = all && s.iso;
    out.steps.push_back(s);
  }
  out.verdict = status_of(all);
  return out;
}

PrimitiveDecomposition primitive_decomposition(const GradedPackage& g, Operator op) {
  if (hard_lefschetz_check(g, op).verdict != Status::pass)
    throw Error(ErrorCode::hypothesis, fmt::format("primitive decomposition: Hard Lefschetz fails for {}", to_string(op)));
  PrimitiveDecomposition out;
  out.op = op;
  for (int k = 0; k <= g.n; ++k) out.primitives.push_back(kernel(g.power(op, k, g.n - k + 1)));

  for (int d = 0; d <= 2 * g.n; ++d)
    for (int m = d % 2; m <= std::min(d, g.n); m += 2) {
      const int j = (d - m) / 2;
      if (j > g.n - m) continue;
      const Subspace& p = out.primitives[static_cast<std::size_t>(m)];
      out.pieces.push_back({d, m, j, image(g.power(op, m, j), p)});
    }

  out.direct = true;
  for (int d = 0; d <= 2 * g.n; ++d) {
    std::vector<const Subspace*> here;
    Index total = 0;
    for (const auto& piece : out.pieces)
      if (piece.degree == d) {
        here.push_back(&piece.space);
        total += piece.space.dim();
      }
    const Index r = rank(concatenate(here, g.dim(d)));
    out.piece_rank.push_back(r);
    out.direct = out.direct && r == g.dim(d) && total == g.dim(d);
  }

  out.orthogonal = true;
  for (const auto& x : out.pieces)
    for (const auto& y : out.pieces) {
      if (y.degree != 2 * g.n - x.degree || x.primitive_degree == y.primitive_degree) continue;
      if (!is_zero(gram(x.space.basis(), g.pairing[static_cast<std::size_t>(x.degree)], y.space.basis())))
        out.orthogonal = false;
    }

  for (int k = 0; k <= g.n; ++k) {
    const Subspace& p = out.primitives[static_cast<std::size_t>(k)];
    PolarizationBlock b;
    b.k = k;
    b.form = gram(p.basis(), g.pairing[static_cast<std::size_t>(k)], g.power(op, k, g.n - k) * p.basis());
    b.nondegenerate = is_invertible_form(b.form);
    b.signature = signature_if_symmetric(b.form);
    out.polarization.push_back(std::move(b));
  }
  return out;
}

std::vector<std::string> package_violations(const ResolutionPackage3& p) {
  const GradedPackage& g = p.g;
  if (g.n != 3) throw Error(ErrorCode::shape, "threefold package: n must be 3");
  auto out = package_violations(g);
  const Index h4 = p.c4.cols();
  const Index h3 = p.c3.cols();
  expect_shape(p.c4, g.dim(2), h4, "c4");
  expect_shape(p.r4, h4, g.dim(4), "r4");
  expect_shape(p.c3, g.dim(3), h3, "c3");
  expect_shape(p.eta_cap, h4, h4, "eta_cap");
  expect_shape(p.h3_pairing, h3, h3, "h3_pairing");

  if (!is_zero(g.op(Operator::L, 2) * p.c4)) out.push_back("L c4 = 0 fails");
  if (rank(p.c3) != h3) out.push_back("c3 is not injective");
  if (p.r4 != p.c4.transpose() * g.pairing[2]) out.push_back("r4 = c4^T pairing[2] fails");
  if (p.eta_cap != gram(p.c4, g.pairing[2], g.op(Operator::eta, 2) * p.c4))
    out.push_back("eta_cap = c4^T pairing[2] eta c4 fails");
  if (p.h3_pairing != gram(p.c3, g.pairing[3], p.c3)) out.push_back("h3_pairing = c3^T pairing[3] c3 fails");
  return out;
}

GradedPackage central_row_package(const ResolutionPackage3& p) {
  const auto violations = package_violations(p);
  if (!violations.empty()) throw Error(ErrorCode::hypothesis, "central row: " + violations.front());
  const GradedPackage& g = p.g;
  const QuotientChart q2 = quotient_chart(Subspace::span(p.c4));
  const Subspace k4 = kernel(p.r4);

  // Each degree gets an inclusion-like map into H^k (to evaluate) and a
  // coordinate map back (to read off results).
  std::vector<RationalMatrix> lift;
  for (int k = 0; k <= 6; ++k) lift.push_back(identity<Rational>(g.dim(k)));
  lift[2] = q2.section;
  lift[4] = k4.basis();
  auto coords = [&](int k, const RationalMatrix& v) -> RationalMatrix {
    if (k == 2) return q2.projection * v;
    if (k == 4) return k4.coordinates(v);
    return v;
  };

  GradedPackage out;
  out.n = 3;
  for (int k = 0; k <= 6; ++k) out.dims.push_back(lift[static_cast<std::size_t>(k)].cols());
  for (int k = 0; k <= 4; ++k) {
    const RationalMatrix l = coords(k + 2, g.op(Operator::L, k) * lift[static_cast<std::size_t>(k)]);
    out.L.push_back(l);
    out.eta.push_back(l);
  }
  for (int k = 0; k <= 6; ++k)
    out.pairing.push_back(
        gram(lift[static_cast<std::size_t>(k)], g.pairing[static_cast<std::size_t>(k)], lift[static_cast<std::size_t>(6 - k)]));
  return out;
}

PerverseFiltration3 perverse_filtration_3fold(const ResolutionPackage3& p) {
  PerverseFiltration3 out;
  out.violations = package_violations(p);
  const GradedPackage& g = p.g;
  const Subspace im_c4 = Subspace::span(p.c4);
  const Subspace ker_r4 = kernel(p.r4);

  for (int i = 0; i <= 6; ++i)
    for (int b = -2; b <= 1; ++b) {
      Subspace s = b <= -2 ? Subspace::zero(g.dim(i)) : Subspace::whole(g.dim(i));
      if (b == -1) s = i == 2 ? im_c4 : Subspace::zero(g.dim(i));
      if (b == 0 && i == 4) s = ker_r4;
      out.steps.push_back({i, b, s});
    }
  for (const auto& step : out.steps) {
    const Index below = step.level == -2 ? 0 : out.steps[&step - out.steps.data() - 1].space.dim();
    if (step.space.dim() > below) out.graded[{step.degree, step.level}] = step.space.dim() - below;
  }

  const Index rc4 = rank(p.c4);
  for (int i = 0; i <= 6; ++i) out.ih_dims.push_back(g.dim(i));
  out.ih_dims[2] -= rc4;
  out.ih_dims[3] -= rank(p.c3);
  out.ih_dims[4] -= rc4;
  out.ih_self_dual = true;
  for (int i = 0; i <= 6; ++i) out.ih_self_dual = out.ih_self_dual && out.ih_dims[static_cast<std::size_t>(i)] == out.ih_dims[static_cast<std::size_t>(6 - i)];

  out.deligne = is_invertible_form(p.eta_cap);
  if (out.deligne) {
    Index ih_total = 0;
    for (Index d : out.ih_dims) ih_total += d;
    out.summands = {{-1, "H_4(D)_y", p.c4.cols()},
                    {0, "IC_Y", ih_total},
                    {0, "H_3(D)_y", p.c3.cols()},
                    {1, "H^4(D)_y", p.r4.rows()}};
  }
  out.verdict = out.violations.empty() ? status_of(out.deligne) : Status::hypothesis_not_met;
  return out;
}

GradedFormCheck refined_form_graded_check(const std::vector<GradedFormBlock>& blocks) {
  GradedFormCheck out;
  bool all = true;
  for (const auto& b : blocks) {
    const bool ok = b.a == b.b ? is_invertible_form(b.form) : is_zero(b.form);
    out.blocks.push_back({b.a, b.b, status_of(ok)});
    all = all && ok;
  }
  out.verdict = status_of(all);
  return out;
}

std::vector<GradedFormBlock> refined_blocks_3fold(const ResolutionPackage3& p) {
  return {{-1, -1, p.eta_cap}, {0, 0, p.h3_pairing}};
}

std::vector<std::string> package_violations(const ResolutionPackage4& p) {
  const GradedPackage& g = p.g;
  if (g.n != 4) throw Error(ErrorCode::shape, "fourfold package: n must be 4");
  auto out = package_violations(g);
  const Index h6 = p.c6.cols();
  expect_shape(p.c6, g.dim(2), h6, "c6");
  expect_shape(p.c5, g.dim(3), p.c5.cols(), "c5");
  expect_shape(p.eta2_cap, h6, h6, "eta2_cap");
  if (p.r5.size() > 0) expect_shape(p.r5, p.r5.rows(), g.dim(5), "r5");
  if (p.r6.size() > 0) expect_shape(p.r6, h6, g.dim(6), "r6");

  if (!is_zero(g.op(Operator::L, 2) * p.c6)) out.push_back("L c6 = 0 fails");
  if (p.eta2_cap != gram(p.c6, g.pairing[2], g.power(Operator::eta, 2, 2) * p.c6))
    out.push_back("eta2_cap = c6^T pairing[2] eta^2 c6 fails");
  if (p.r6.size() > 0 && p.r6 != p.c6.transpose() * g.pairing[2]) out.push_back("r6 = c6^T pairing[2] fails");
  return out;
}

ExcessDimension excess_dimension_4fold(const ResolutionPackage4& p) {
  const GradedPackage& g = p.g;
  package_violations(p);
  ExcessDimension out;
  out.lhs = g.dim(4) - rank(g.op(Operator::L, 4));
  out.rhs = g.dim(4) - g.dim(2) + p.c6.cols();
  out.equal = out.lhs == out.rhs;
  out.eta2_cap_negative_definite = definiteness(p.eta2_cap).verdict == Definiteness::negative_definite ||
                                   definiteness(p.eta2_cap).verdict == Definiteness::empty;
  return out;
}

H4Decomposition h4_decomposition_4fold(const ResolutionPackage4& p) {
  const GradedPackage& g = p.g;
  const auto violations = package_violations(p);
  H4Decomposition out;
  const RationalMatrix& pairing4 = g.pairing[4];
  out.eta_classes = Subspace::span(g.op(Operator::eta, 2) * p.c6);
  out.primitive_part = right_orthogonal(out.eta_classes, pairing4).intersect(kernel(g.op(Operator::L, 4)));
  out.image_L = Subspace::span(g.op(Operator::L, 2));

  const Index total = out.eta_classes.dim() + out.primitive_part.dim() + out.image_L.dim();
  out.direct = total == g.dim(4) && rank(concatenate({&out.eta_classes, &out.primitive_part, &out.image_L}, g.dim(4))) == g.dim(4);
  const std::vector<const Subspace*> parts{&out.eta_classes, &out.primitive_part, &out.image_L};
  out.orthogonal = true;
  for (std::size_t x = 0; x < parts.size(); ++x)
    for (std::size_t y = x + 1; y < parts.size(); ++y)
      if (!is_zero(gram(parts[x]->basis(), pairing4, parts[y]->basis()))) out.orthogonal = false;
  out.verdict = violations.empty() ? status_of(out.direct && out.orthogonal) : Status::hypothesis_not_met;
  return out;
}

LimitResult limit_primitives(const GradedPackage& g, int k, std::stop_token stop) {
  if (hard_lefschetz_check(g, Operator::eta).verdict != Status::pass)
    throw Error(ErrorCode::hypothesis, "limit_primitives: eta fails Hard Lefschetz");
  const RationalMatrix l = g.op(Operator::L, k);
  const PolyMatrix family = param_kernel(pencil(l, g.op(Operator::eta, k)), stop);
  LimitResult out;
  out.generic_dim = family.cols();
  out.limit = subspace_limit(family);
  out.kernel_L = kernel(l);
  out.contained_in_kernel_L = out.kernel_L.contains(out.limit);
  return out;
}

Index BigradedPackage::dim(Bidegree d) const {
  const auto it = dims.find(d);
  return it == dims.end() ? 0 : it->second;
}

RationalMatrix BigradedPackage::op(Operator o, Bidegree from) const {
  const Bidegree to{from.l + 2, o == Operator::eta ? from.a + 2 : from.a};
  const auto& maps = o == Operator::eta ? eta : L;
  const auto it = maps.find(from);
  if (it == maps.end()) return zero(dim(to), dim(from));
  return it->second;
}

RationalMatrix BigradedPackage::power(Operator o, Bidegree from, int i) const {
  RationalMatrix out = identity<Rational>(dim(from));
  Bidegree at = from;
  for (int s = 0; s < i; ++s) {
    out = op(o, at) * out;
    at = {at.l + 2, o == Operator::eta ? at.a + 2 : at.a};
  }
  return out;
}

RationalMatrix BigradedPackage::pairing_at(Bidegree d) const {
  const auto it = pairing.find(d);
  if (it == pairing.end()) return zero(dim(d), dim({2 * n - d.l, -d.a}));
  return it->second;
}

void validate(const BigradedPackage& b) {
  for (const auto& [d, n] : b.dims)
    if (n < 0) throw Error(ErrorCode::shape, "bigraded package: negative dimension");
  for (const auto& [from, m] : b.eta)
    expect_shape(m, b.dim({from.l + 2, from.a + 2}), b.dim(from), fmt::format("eta on H^{}_{}", from.l, from.a));
  for (const auto& [from, m] : b.L)
    expect_shape(m, b.dim({from.l + 2, from.a}), b.dim(from), fmt::format("L on H^{}_{}", from.l, from.a));
  for (const auto& [d, m] : b.pairing)
    expect_shape(m, b.dim(d), b.dim({2 * b.n - d.l, -d.a}), fmt::format("pairing on H^{}_{}", d.l, d.a));
}

EtaLDecomposition eta_l_decomposition(const BigradedPackage& b) {
  validate(b);
  // Graded Hard Lefschetz: eta^i : H^l_{-i} -> H^{l+2i}_i and
  // L^j : H^l_a -> H^{l+2j}_a with l - n - a = -j.
  std::set<Bidegree> support;
  for (const auto& [d, n] : b.dims)
    if (n > 0) support.insert(d);
  for (const Bidegree& d : support) {
    const int j = -(d.l - b.n - d.a);
    if (d.a <= 0 && !is_invertible_form(b.power(Operator::eta, d, -d.a)))
      throw Error(ErrorCode::hypothesis, fmt::format("graded Hard Lefschetz fails for eta^{} on H^{}_{}", -d.a, d.l, d.a));
    if (j >= 0 && !is_invertible_form(b.power(Operator::L, d, j)))
      throw Error(ErrorCode::hypothesis, fmt::format("graded Hard Lefschetz fails for L^{} on H^{}_{}", j, d.l, d.a));
    if (d.a > 0 && b.dim({d.l - 2 * d.a, -d.a}) != b.dim(d))
      throw Error(ErrorCode::hypothesis, fmt::format("graded Hard Lefschetz fails for eta^{} onto H^{}_{}", d.a, d.l, d.a));
    if (j < 0 && b.dim({d.l + 2 * j, d.a}) != b.dim(d))
      throw Error(ErrorCode::hypothesis, fmt::format("graded Hard Lefschetz fails for L^{} onto H^{}_{}", -j, d.l, d.a));
  }

  EtaLDecomposition out;
  for (const Bidegree& d : support) {
    const int i = -d.a;
    const int j = -(d.l - b.n - d.a);
    if (i < 0 || j < 0) continue;
    const RationalMatrix both = [&] {
      const RationalMatrix e = b.power(Operator::eta, d, i + 1);
      const RationalMatrix l = b.power(Operator::L, d, j + 1);
      RationalMatrix stacked(e.rows() + l.rows(), b.dim(d));
      stacked << e, l;
      return stacked;
    }();
    const Subspace p = kernel(both);
    if (p.dim() > 0) out.primitives.push_back({i, j, p});
  }

  // Basis of eta^p L^q applied to the primitive basis, before spanning, so
  // that mirror pieces can be paired against the same primitive vectors.
  std::vector<RationalMatrix> raw;
  for (const auto& prim : out.primitives) {
    const Bidegree base{b.n - prim.i - prim.j, -prim.i};
    for (int p = 0; p <= prim.i; ++p)
      for (int q = 0; q <= prim.j; ++q) {
        const RationalMatrix e = b.power(Operator::eta, base, p) * prim.space.basis();
        const Bidegree mid{base.l + 2 * p, base.a + 2 * p};
        const RationalMatrix v = b.power(Operator::L, mid, q) * e;
        out.pieces.push_back({prim.i, prim.j, p, q, {mid.l + 2 * q, mid.a}, Subspace::span(v)});
        raw.push_back(v);
      }
  }

  out.direct = true;
  for (const auto& [d, n] : b.dims) {
    std::vector<const Subspace*> here;
    Index total = 0;
    for (const auto& piece : out.pieces)
      if (piece.at == d) {
        here.push_back(&piece.space);
        total += piece.space.dim();
      }
    out.direct = out.direct && total == n && rank(concatenate(here, n)) == n;
  }

  auto is_mirror = [](const EtaLPiece& x, const EtaLPiece& y) {
    return x.i == y.i && x.j == y.j && y.p == x.i - x.p && y.q == x.j - x.q;
  };
  out.orthogonal = true;
  for (std::size_t x = 0; x < out.pieces.size(); ++x) {
    const auto& px = out.pieces[x];
    const Bidegree opposite{2 * b.n - px.at.l, -px.at.a};
    for (std::size_t y = 0; y < out.pieces.size(); ++y) {
      const auto& py = out.pieces[y];
      if (py.at != opposite) continue;
      // Both are bases of eta^p L^q P with P's basis vectors in the same
      // order, so the gram is the transported S form on P.
      const RationalMatrix g = gram(raw[x], b.pairing_at(px.at), raw[y]);
      if (is_mirror(px, py)) {
        out.diagonal.push_back({x, g, is_invertible_form(g), signature_if_symmetric(g)});
      } else if (x < y) {
        out.off_diagonal.push_back({x, y, g, is_zero(g)});
        out.orthogonal = out.orthogonal && out.off_diagonal.back().zero;
      }
    }
  }
  bool polarized = true;
  for (const auto& d : out.diagonal) polarized = polarized && d.nondegenerate;
  out.verdict = status_of(out.direct && out.orthogonal && polarized);
  return out;
}

}  // namespace perverse
