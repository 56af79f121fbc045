#include "perverse/motive.hpp"

#include <fmt/format.h>

namespace perverse {
namespace {

RationalMatrix block(const RationalMatrix& total, const std::vector<Index>& offsets, int k) {
  const auto u = static_cast<std::size_t>(k);
  const Index size = offsets[u + 1] - offsets[u];
  return total.block(offsets[u], offsets[u], size, size);
}

Index rank_in_degree(const RationalMatrix& total, const std::vector<Index>& offsets, int k) {
  return rank(block(total, offsets, k));
}

}  // namespace

RationalMatrix dual_basis_projector(const Subspace& w, const RationalMatrix& pairing) {
  if (pairing.rows() != w.ambient_dim() || pairing.cols() != w.ambient_dim())
    throw Error(ErrorCode::shape, "dual_basis_projector: pairing does not match the ambient space");
  const RationalMatrix& b = w.basis();
  const RationalMatrix g = gram(b, pairing, b);
  if (!is_invertible(g)) throw Error(ErrorCode::degenerate_pairing, "pairing degenerate on W");
  const RationalMatrix pi = b * inverse(g) * b.transpose() * pairing;
#ifndef NDEBUG
  if (pi * pi != pi) throw Error(ErrorCode::singular, "dual_basis_projector: not idempotent");
  if (pi.transpose() * pairing != pairing * pi) throw Error(ErrorCode::singular, "dual_basis_projector: not self-adjoint");
#endif
  return pi;
}

ProjectorSet threefold_projectors(const ResolutionPackage3& p) {
  const auto violations = package_violations(p);
  if (!violations.empty()) throw Error(ErrorCode::hypothesis, "threefold_projectors: " + violations.front());
  const auto form = definiteness(p.eta_cap).verdict;
  if (form != Definiteness::negative_definite && form != Definiteness::empty)
    throw Error(ErrorCode::hypothesis, "threefold_projectors: eta_cap is not negative definite");

  const GradedPackage& g = p.g;
  ProjectorSet out;
  out.offsets.push_back(0);
  for (int k = 0; k <= 6; ++k) out.offsets.push_back(out.offsets.back() + g.dim(k));
  const Index total = out.offsets.back();
  out.z_minus1 = zeros<Rational>(total, total);
  out.z0 = zeros<Rational>(total, total);
  out.z1 = zeros<Rational>(total, total);

  const RationalMatrix lambda = inverse(p.eta_cap);
  const RationalMatrix eta_c4 = g.op(Operator::eta, 2) * p.c4;
  const auto at = [&](int k) { return out.offsets[static_cast<std::size_t>(k)]; };
  // <a, eta D_i> = (eta c4)^T pairing[2]^T a, and <D_i, b> = c4^T pairing[2] b.
  out.z_minus1.block(at(2), at(2), g.dim(2), g.dim(2)) =
      p.c4 * lambda.transpose() * eta_c4.transpose() * g.pairing[2].transpose();
  out.z1.block(at(4), at(4), g.dim(4), g.dim(4)) = eta_c4 * lambda * p.c4.transpose() * g.pairing[2];
  out.z0.block(at(3), at(3), g.dim(3), g.dim(3)) = dual_basis_projector(Subspace::span(p.c3), g.pairing[3]);

  out.delta_complement = identity<Rational>(total) - out.z_minus1 - out.z0 - out.z1;
  return out;
}

std::vector<ProjectorCheck> projector_checks(const ProjectorSet& ps, const ResolutionPackage3& p) {
  const GradedPackage& g = p.g;
  std::vector<ProjectorCheck> out;
  auto check = [&](std::string id, bool holds) { out.push_back({std::move(id), holds}); };
  const std::vector<std::pair<std::string, const RationalMatrix*>> zs{
      {"z_minus1", &ps.z_minus1}, {"z0", &ps.z0}, {"z1", &ps.z1}};
  for (const auto& [name, z] : zs) check(name + " idempotent", *z * *z == *z);
  for (std::size_t a = 0; a < zs.size(); ++a)
    for (std::size_t b = 0; b < zs.size(); ++b)
      if (a != b) check(zs[a].first + " " + zs[b].first + " = 0", is_zero(RationalMatrix(*zs[a].second * *zs[b].second)));
  check("delta_complement idempotent", ps.delta_complement * ps.delta_complement == ps.delta_complement);

  const RationalMatrix z2 = block(ps.z_minus1, ps.offsets, 2);
  const RationalMatrix z4 = block(ps.z1, ps.offsets, 4);
  const RationalMatrix& pair = g.pairing[2];
  check("z_minus1 c4 = c4", z2 * p.c4 == p.c4);
  check("z1 adjoint to z_minus1", z2.transpose() * pair == pair * z4);
  check("im z_minus1 = H^2_{<=-1}", Subspace::span(z2) == Subspace::span(p.c4));
  check("ker z1 = H^4_{<=0}", Subspace::span(kernel_basis(z4)) == Subspace::span(kernel_basis(p.r4)));
  const RationalMatrix c2 = block(ps.delta_complement, ps.offsets, 2);
  check("im complement on H^2 = (eta im c4)^perp",
        Subspace::span(c2) == left_orthogonal(Subspace::span(g.op(Operator::eta, 2) * p.c4), pair));
  check("im z0 = im c3", Subspace::span(block(ps.z0, ps.offsets, 3)) == Subspace::span(p.c3));
  return out;
}

MotiveReport motive_report(const ProjectorSet& ps, const ResolutionPackage3& p) {
  MotiveReport out;
  for (int k = 0; k <= 6; ++k) out.ih_dims.push_back(rank_in_degree(ps.delta_complement, ps.offsets, k));
  out.filtration_ih = perverse_filtration_3fold(p).ih_dims;
  out.projector_checks = projector_checks(ps, p);
  out.self_dual = true;
  for (int k = 0; k <= 6; ++k)
    out.self_dual = out.self_dual && out.ih_dims[static_cast<std::size_t>(k)] == out.ih_dims[static_cast<std::size_t>(6 - k)];
  bool all = out.self_dual && out.ih_dims == out.filtration_ih;
  for (const auto& c : out.projector_checks) all = all && c.holds;
  out.verdict = status_of(all);
  out.caveats = {
      "z0 is constructed on cohomology only; algebraicity of a cycle representing it is assumed, not certified",
      "the projectors are cohomological; lifting them to Chow motives is informational and not computed",
  };
  return out;
}

}  // namespace perverse
