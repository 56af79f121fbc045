#pragma once

// Projectors on the total cohomology H^0 + ... + H^6 of a threefold
// resolution that cut the intersection cohomology of Y out of H^*(X).
// Operators are block matrices indexed by degree; off-degree blocks are zero.

#include <string>
#include <vector>

#include "perverse/lefschetz.hpp"

namespace perverse {

/// Pi = B G^{-1} B^T Q with G = B^T Q B: the projector onto span(B) along its
/// Q-orthogonal. Throws Error(degenerate_pairing) when G is singular.
RationalMatrix dual_basis_projector(const Subspace& w, const RationalMatrix& pairing);

struct ProjectorSet {
  RationalMatrix z_minus1;  // onto im c4 in H^2
  RationalMatrix z0;        // onto im c3 in H^3
  RationalMatrix z1;        // onto eta im c4 in H^4
  RationalMatrix delta_complement;
  std::vector<Index> offsets;  // first index of H^k in the total space, k = 0 .. 7
};

/// Lambda = eta_cap^{-1}; Z_{-1} a = sum lambda_ij <a, eta D_i> D_j on H^2, Z_1
/// its adjoint on H^4, Z_0 the dual basis projector of im c3 on H^3. Throws
/// Error(hypothesis) when a package identity fails or eta_cap is not negative
/// definite, Error(degenerate_pairing) when h3 pairs degenerately on im c3.
ProjectorSet threefold_projectors(const ResolutionPackage3& p);

struct ProjectorCheck {
  std::string id;
  bool holds = false;
};

/// Idempotence, pairwise orthogonality, Z_{-1} c4 = c4, adjointness of Z_1
/// and Z_{-1}, and agreement of the images with the perverse filtration.
std::vector<ProjectorCheck> projector_checks(const ProjectorSet& ps, const ResolutionPackage3& p);

struct MotiveReport {
  Status verdict = Status::fail;
  std::vector<Index> ih_dims;          // rank of delta_complement per degree
  std::vector<Index> filtration_ih;    // IH table of perverse_filtration_3fold
  std::vector<ProjectorCheck> projector_checks;
  bool self_dual = false;              // IH^i = IH^{6-i}
  std::vector<std::string> caveats;
};

MotiveReport motive_report(const ProjectorSet& ps, const ResolutionPackage3& p);

}  // namespace perverse
