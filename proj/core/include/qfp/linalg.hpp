#pragma once

#include "qfp/matrix.hpp"
#include "qfp/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace qfp {

/// Rank over Q via fraction-free (Bareiss) elimination. Rows are scaled to
/// integers first, which does not change the rank.
std::size_t rank_rational(const RationalMatrix& m);

/// Rank over Q of a dense row-major integer matrix. The input is consumed as
/// Bareiss workspace.
std::size_t rank_integer(std::vector<Integer> entries, std::size_t rows, std::size_t cols);

/// Rank over Q of A[rows, cols].
std::size_t rank_of_submatrix(const SymmetricIntMatrix& a, const std::vector<std::size_t>& rows,
                              const std::vector<std::size_t>& cols);

std::size_t rank(const SymmetricIntMatrix& a);

/// Unique x with Mx = b; std::nullopt when M is singular (no unique solution).
/// Throws DimensionMismatch when M is not square or b has the wrong length.
std::optional<std::vector<Rational>> solve_square(const RationalMatrix& m, const std::vector<Rational>& b);

/// Exact determinant, used for the small invertibility checks in the
/// structure decompositions.
Rational determinant(const RationalMatrix& m);

/// Reduced row echelon solve of an arbitrary (possibly overdetermined or
/// underdetermined) system. Free variables are set to zero.
struct LinearSolveResult {
  bool consistent = false;
  std::vector<Rational> solution;
  std::vector<bool> pivot;  // pivot[j] is false for free variables
  std::size_t rank = 0;
};
LinearSolveResult solve_linear_system(const RationalMatrix& m, const std::vector<Rational>& b);

}  // namespace qfp
