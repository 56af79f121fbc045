#pragma once

#include <stop_token>

#include "perverse/exactla/polynomial.hpp"
#include "perverse/exactla/subspace.hpp"

namespace perverse {

/// base + eps * direction.
ParamMatrix pencil(const RationalMatrix& base, const RationalMatrix& direction);

ParamMatrix to_param(const RationalMatrix& m);

/// Evaluation of a polynomial matrix at eps = at.
RationalMatrix evaluate(const PolyMatrix& m, const Rational& at);

/// Columns with polynomial entries spanning ker p over Q(eps).
///
/// Rows are first cleared of denominators, then reduced by fraction-free
/// elimination: a row r is replaced by (a/g) r - (b/g) pivot_row with
/// g = gcd(a, b), and every touched row is divided by the gcd of its entries.
/// Each output column is normalized to integer coefficients with gcd 1 and a
/// positive leading coefficient on its first nonzero entry.
///
/// The stop token is polled once per pivot column; a stop request raises
/// Error(cancelled).
PolyMatrix param_kernel(const ParamMatrix& p, std::stop_token stop = {});

/// Limit as eps -> 0 of the span of the columns of `family` (independent over
/// Q(eps)). While the eps = 0 evaluation loses rank, a rational dependency c of
/// the evaluated columns is taken, the column at c's first free slot is
/// replaced by sum c_i K_i divided by its eps-valuation, and the test is
/// repeated. Each round lowers the valuation of the maximal minors, so the
/// loop terminates.
Subspace subspace_limit(const PolyMatrix& family);

}  // namespace perverse
