#pragma once

// Hard Lefschetz data for a proper map f : X -> Y from a nonsingular
// projective X of dimension n: eta is an ample class on X, L the pullback of an
// ample class on Y. Operators raise the cohomological degree by 2.

#include <compare>
#include <map>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "perverse/exactla/param.hpp"
#include "perverse/exactla/signature.hpp"
#include "perverse/exactla/subspace.hpp"

namespace perverse {

enum class Operator { eta, L };

std::string_view to_string(Operator op);

struct GradedPackage {
  int n = 0;
  std::vector<Index> dims;              // dim H^k, k = 0 .. 2n
  std::vector<RationalMatrix> eta;      // eta[k] : H^k -> H^{k+2}, k = 0 .. 2n-2
  std::vector<RationalMatrix> L;
  std::vector<RationalMatrix> pairing;  // pairing[k] : H^k x H^{2n-k} -> Q, k = 0 .. 2n

  /// 0 outside 0 .. 2n.
  Index dim(int k) const;
  /// op on H^k; a zero map when either end is out of range.
  RationalMatrix op(Operator o, int k) const;
  /// op^i : H^k -> H^{k+2i}.
  RationalMatrix power(Operator o, int k, int i) const;
};

/// Throws Error(shape) when the matrices do not fit dims. Otherwise returns
/// one line per failing identity: commutation, <op x, y> = <x, op y>,
/// pairing[2n-k] = (-1)^k pairing[k]^T, nondegeneracy.
std::vector<std::string> package_violations(const GradedPackage& g);

struct LefschetzStep {
  int i = 0;  // op^i : H^{n-i} -> H^{n+i}
  Index rank = 0;
  Index source_dim = 0;
  Index target_dim = 0;
  bool iso = false;
};

struct HardLefschetzResult {
  Status verdict = Status::fail;
  std::vector<LefschetzStep> steps;  // i = 0 .. n
};

HardLefschetzResult hard_lefschetz_check(const GradedPackage& g, Operator op);

/// op^power P^primitive_degree as a subspace of H^degree.
struct LefschetzPiece {
  int degree = 0;
  int primitive_degree = 0;
  int power = 0;
  Subspace space;
};

/// The form <x, op^{n-k} y> on P^k; symmetric for even k, skew for odd k.
struct PolarizationBlock {
  int k = 0;
  RationalMatrix form;
  bool nondegenerate = false;
  std::optional<Signature> signature;  // symmetric blocks only
};

struct PrimitiveDecomposition {
  Operator op = Operator::eta;
  std::vector<Subspace> primitives;  // P^k = ker op^{n-k+1} in H^k, k = 0 .. n
  std::vector<LefschetzPiece> pieces;
  std::vector<Index> piece_rank;     // rank of all pieces of H^k together
  bool direct = false;               // piece_rank[k] = dim H^k = sum of piece dims
  bool orthogonal = false;           // pieces from different P^m pair to zero
  std::vector<PolarizationBlock> polarization;
};

/// H^k = sum_j op^j P^{k-2j}. Throws Error(hypothesis) when Hard Lefschetz
/// fails for op.
PrimitiveDecomposition primitive_decomposition(const GradedPackage& g, Operator op);

/// Resolution of an isolated threefold singularity, D the exceptional set.
struct ResolutionPackage3 {
  GradedPackage g;
  RationalMatrix c4;          // H_4(D) -> H^2
  RationalMatrix r4;          // H^4 -> H^4(D)
  RationalMatrix c3;          // H_3(D) -> H^3
  RationalMatrix eta_cap;     // (eta cap [D_i]) . [D_j] on H_4(D)
  RationalMatrix h3_pairing;  // intersection form on H_3(D)
};

/// Shape errors throw. Listed identities: the GradedPackage ones, L c4 = 0,
/// c3 injective, r4 = c4^T pairing[2], eta_cap = c4^T pairing[2] eta c4 and
/// h3_pairing = c3^T pairing[3] c3.
std::vector<std::string> package_violations(const ResolutionPackage3& p);

/// H^0, H^1, H^2 / im c4, H^3, ker r4, H^5, H^6 with the maps induced by L
/// (which also serves as eta) and the induced pairings.
GradedPackage central_row_package(const ResolutionPackage3& p);

struct FiltrationStep {
  int degree = 0;
  int level = 0;  // H^degree_{<= level}
  Subspace space;
};

struct PerverseSummand {
  int perverse_degree = 0;
  std::string name;  // "H_4(D)_y", "IC_Y", "H_3(D)_y", "H^4(D)_y"
  Index dim = 0;     // total dimension of its contribution to H^*(X)
};

struct PerverseFiltration3 {
  Status verdict = Status::fail;
  std::vector<std::string> violations;
  std::vector<FiltrationStep> steps;           // degrees 0 .. 6, levels -2 .. 1
  std::map<std::pair<int, int>, Index> graded;  // (degree, level) -> dim H^degree_level, nonzero only
  std::vector<Index> ih_dims;                   // IH^0 .. IH^6 of Y
  bool ih_self_dual = false;
  bool deligne = false;                         // eta_cap invertible
  std::vector<PerverseSummand> summands;        // empty unless deligne
};

/// H^2_{<=-1} = im c4, H^4_{<=0} = ker r4; every other step is 0 or everything.
/// hypothesis_not_met when a package identity fails, else pass iff deligne.
PerverseFiltration3 perverse_filtration_3fold(const ResolutionPackage3& p);

/// The graded refined intersection form on the (a, b) piece:
/// zero is expected when a != b, invertible when a == b.
struct GradedFormBlock {
  int a = 0;
  int b = 0;
  RationalMatrix form;
};

struct GradedFormVerdict {
  int a = 0;
  int b = 0;
  Status status = Status::fail;
};

struct GradedFormCheck {
  Status verdict = Status::fail;
  std::vector<GradedFormVerdict> blocks;
};

GradedFormCheck refined_form_graded_check(const std::vector<GradedFormBlock>& blocks);

/// H_4(D) sits in perverse degree -1 with form eta_cap, H_3(D) in degree 0
/// with form h3_pairing.
std::vector<GradedFormBlock> refined_blocks_3fold(const ResolutionPackage3& p);

/// Resolution of a fourfold whose exceptional divisors map to a point.
struct ResolutionPackage4 {
  GradedPackage g;
  RationalMatrix c6;        // H_6(D) -> H^2
  RationalMatrix c5;        // H_5(D) -> H^3
  RationalMatrix r5;        // H^5 -> H^5(D)
  RationalMatrix r6;        // H^6 -> H^6(D)
  RationalMatrix eta2_cap;  // (eta^2 cap [D_i]) . [D_j]
};

/// Shape errors throw. Listed identities: the GradedPackage ones, L c6 = 0,
/// eta2_cap = c6^T pairing[2] eta^2 c6, r6 = c6^T pairing[2] when r6 is given.
std::vector<std::string> package_violations(const ResolutionPackage4& p);

struct ExcessDimension {
  Index lhs = 0;  // dim ker(L : H^4 -> H^6)
  Index rhs = 0;  // b4 - b2 + dim H_6(D)
  bool equal = false;
  bool eta2_cap_negative_definite = false;
};

ExcessDimension excess_dimension_4fold(const ResolutionPackage4& p);

/// H^4 = eta H_6(D) + ((eta H_6(D))^perp cap ker L) + im L.
struct H4Decomposition {
  Status verdict = Status::fail;
  Subspace eta_classes;
  Subspace primitive_part;
  Subspace image_L;
  bool direct = false;
  bool orthogonal = false;
};

H4Decomposition h4_decomposition_4fold(const ResolutionPackage4& p);

struct LimitResult {
  Subspace limit;
  Index generic_dim = 0;  // dim ker(L + eps eta) over Q(eps)
  Subspace kernel_L;
  bool contained_in_kernel_L = false;
};

/// lim_{eps -> 0} ker(L + eps eta : H^k -> H^{k+2}), computed from the pencil
/// over Q(eps). Throws Error(hypothesis) when eta fails Hard Lefschetz.
LimitResult limit_primitives(const GradedPackage& g, int k, std::stop_token stop = {});

/// (cohomological degree l, perverse degree a).
struct Bidegree {
  int l = 0;
  int a = 0;
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

/// Graded pieces H^l_a with eta : H^l_a -> H^{l+2}_{a+2},
/// L : H^l_a -> H^{l+2}_a and the pairing H^l_a x H^{2n-l}_{-a} -> Q.
/// Absent keys are zero spaces and zero maps.
struct BigradedPackage {
  int n = 0;
  std::map<Bidegree, Index> dims;
  std::map<Bidegree, RationalMatrix> eta;
  std::map<Bidegree, RationalMatrix> L;
  std::map<Bidegree, RationalMatrix> pairing;

  Index dim(Bidegree d) const;
  RationalMatrix op(Operator o, Bidegree from) const;
  RationalMatrix power(Operator o, Bidegree from, int i) const;
  RationalMatrix pairing_at(Bidegree d) const;
};

/// Throws Error(shape) when a matrix does not fit the dims.
void validate(const BigradedPackage& b);

/// P^{-j}_{-i} = ker eta^{i+1} cap ker L^{j+1} in H^{n-i-j}_{-i}.
struct EtaLPrimitive {
  int i = 0;
  int j = 0;
  Subspace space;
};

/// eta^p L^q P^{-j}_{-i}, 0 <= p <= i, 0 <= q <= j.
struct EtaLPiece {
  int i = 0;
  int j = 0;
  int p = 0;
  int q = 0;
  Bidegree at;
  Subspace space;
};

/// Pairing between a piece X at (l, a) and a piece Y at (2n-l, -a). For
/// a <= 0 and l - n - a <= 0 it is the S^{eta L} form between X and the
/// preimage of Y; elsewhere it is its Lefschetz transport.
struct EtaLBlock {
  std::size_t left = 0;
  std::size_t right = 0;
  RationalMatrix gram;
  bool zero = false;
};

struct EtaLDiagonal {
  std::size_t piece = 0;
  RationalMatrix form;
  bool nondegenerate = false;
  std::optional<Signature> signature;  // symmetric blocks only
};

struct EtaLDecomposition {
  Status verdict = Status::fail;
  std::vector<EtaLPrimitive> primitives;  // nonzero ones only
  std::vector<EtaLPiece> pieces;
  bool direct = false;
  std::vector<EtaLBlock> off_diagonal;  // every non-mirror pair
  bool orthogonal = false;
  std::vector<EtaLDiagonal> diagonal;
};

/// Throws Error(hypothesis) when graded Hard Lefschetz fails for eta or L,
/// Error(shape) on a dimension mismatch.
EtaLDecomposition eta_l_decomposition(const BigradedPackage& b);

}  // namespace perverse
