#pragma once

#include "qfp/matrix.hpp"

#include <cstddef>
#include <vector>

namespace qfp {

/// rank_off(A): the largest rank of a submatrix A[I, J] with I and J disjoint
/// (so no diagonal entry of A is included), together with a witness.
struct OffDiagReport {
  std::size_t value = 0;
  std::vector<std::size_t> witness_rows;  // I, ascending
  std::vector<std::size_t> witness_cols;  // J, ascending
};

/// Exhaustive scan over all pairs of nonempty disjoint (I, J). Intended as the
/// oracle; cost is ~3^n rank computations. Ties go to the lexicographically
/// smallest (J, I).
OffDiagReport offdiag_rank_oracle(const SymmetricIntMatrix& a);

/// Enlarging I never lowers rank(A[I, J]), so it suffices to scan J over
/// nonempty proper subsets with I = complement(J): 2^n rank computations.
/// Subset sizes whose bound min(|J|, n - |J|) is below the incumbent are
/// skipped. Ties go to the lexicographically smallest J.
OffDiagReport offdiag_rank(const SymmetricIntMatrix& a);

}  // namespace qfp
