#include "perverse/germ.hpp"

#include <string>

namespace perverse {

void validate(const LinkCohomology& link) {
  if (link.n < 1 || link.dims.size() != static_cast<std::size_t>(2 * link.n))
    throw Error(ErrorCode::shape, "link cohomology: expected 2n Betti numbers");
  if (link.dims[0] < 1) throw Error(ErrorCode::shape, "link cohomology: H^0 must be nonzero");
  for (Index d : link.dims)
    if (d < 0) throw Error(ErrorCode::shape, "link cohomology: negative Betti number");
}

std::vector<Index> gysin_s1_bundle(const std::vector<Index>& base_dims, const std::vector<RationalMatrix>& euler_maps) {
  const int len = static_cast<int>(base_dims.size());
  const int maps = std::max(0, len - 2);
  if (!euler_maps.empty() && static_cast<int>(euler_maps.size()) != maps)
    throw Error(ErrorCode::shape, "gysin_s1_bundle: expected one Euler map per degree H^k -> H^{k+2}");
  auto base = [&](int k) { return k < 0 || k >= len ? Index(0) : base_dims[static_cast<std::size_t>(k)]; };
  auto euler = [&](int k) -> RationalMatrix {
    if (euler_maps.empty() || k < 0 || k >= maps) return RationalMatrix::Zero(base(k + 2), base(k));
    return euler_maps[static_cast<std::size_t>(k)];
  };
  for (int k = 0; k < maps && !euler_maps.empty(); ++k)
    if (euler(k).rows() != base(k + 2) || euler(k).cols() != base(k))
      throw Error(ErrorCode::shape, "gysin_s1_bundle: Euler map out of H^" + std::to_string(k) + " has the wrong shape");

  std::vector<Index> out;
  for (int k = 0; k <= len; ++k) {
    const Index coker = base(k) - rank(euler(k - 2));
    const Index ker = base(k - 1) - rank(euler(k - 1));
    out.push_back(coker + ker);
  }
  return out;
}

ChainComplex ic_isolated(const LinkCohomology& link) {
  validate(link);
  return ChainComplex::formal(-link.n, std::vector<Index>(link.dims.begin(), link.dims.begin() + link.n));
}

GermDataset::GermDataset(int n, ChainMap attach) : n_(n), attach_(std::move(attach)) {
  if (n < 1) throw Error(ErrorCode::shape, "germ: dimension must be positive");
}

GermDataset GermDataset::from_local_cohomology(int n, const ChainMap& rho) {
  return GermDataset(n, cone_inclusion(rho));
}

ChainComplex perverse_truncate_point_germ(const GermDataset& g, int m) {
  const Cohomology link(g.link_complex());
  for (const auto& [k, d] : link.dims())
    if (k < -g.n() || k > g.n() - 1)
      throw Error(ErrorCode::hypothesis, "perverse truncation: link cohomology in degree " + std::to_string(k) +
                                             " is outside [-n, n-1]");
  // On the open part the complex is L[n], and pperv-tau_{>m} there is tau_{>m-n}.
  const ChainComplex after_open = m < 0 ? shift(cone(g.attach()), -1) : g.stalk();
  return shift(cone(truncation_projection(after_open, m + 1)), -1);
}

SplittingResult splitting_criterion(Index h0p_dim, const RationalMatrix& map_to_link) {
  if (map_to_link.cols() != h0p_dim)
    throw Error(ErrorCode::shape, "splitting_criterion: map must have one column per basis vector of H^0(P)");
  SplittingResult out;
  out.split = is_zero(map_to_link);
  if (out.split) {
    out.summands.push_back({"IC_U(L)", {}});
    out.summands.push_back({"H^0(P)_y[0]", h0p_dim > 0 ? std::map<int, Index>{{0, h0p_dim}} : std::map<int, Index>{}});
  }
  return out;
}

SurfaceDecomposition decompose_surface_germ(const SurfaceGerm& s) {
  const RationalMatrix& m = s.config.m;
  if (m.rows() != m.cols() || m.rows() < 1) throw Error(ErrorCode::shape, "surface germ: need r >= 1 curves");
  if (!is_symmetric(m)) throw Error(ErrorCode::not_symmetric, "surface germ: intersection matrix is not symmetric");
  const Index r = m.rows();

  // H^2(X) = H^2(D) receives H_2(D) through m; rho is the projection to coker m.
  const RationalMatrix rho = quotient_chart(Subspace::span(m)).projection;
  const auto splitting = splitting_criterion(r, rho);

  SurfaceDecomposition out;
  out.split = splitting.split;
  const Index ker = r - rank(m);
  const Index coker = rho.rows();
  out.link = {2, {1, s.b1D + ker, s.b1D + coker, 1}};
  out.ic_stalk = Cohomology(ic_isolated(out.link)).dims();
  out.rational_homology_manifold = !out.ic_stalk.count(-1);
  if (out.split) {
    out.skyscraper_dim = r;
    std::map<int, Index> total = out.ic_stalk;
    total[0] += out.skyscraper_dim;
    std::map<int, Index> expected{{-2, 1}, {0, r}};
    if (s.b1D > 0) expected[-1] = s.b1D;
    out.conserved = total == expected;
  }
  return out;
}

}  // namespace perverse
