#pragma once

#include "qfp/matrix.hpp"
#include "qfp/rational.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qfp {

// ---------------------------------------------------------------------------
// Canonical forms. Every form carries the permutation P with
//   P^T A P = block_form(form)
// under the convention of conjugate_by_permutation, and assemble(form)
// inverts that relation exactly.
// ---------------------------------------------------------------------------

/// Off-diagonal rank 1:
///   P^T A P = [[a, xi^T], [xi, D + h xi xi^T]],  xi != 0.
struct Rank1Form {
  IndexPermutation perm;
  Integer a;
  std::vector<Integer> xi;  // length n-1
  std::vector<Rational> d;  // diagonal of D, length n-1
  Rational h;
};

enum class Rank2Case { Case11, Case21, Case22 };
std::string_view to_string(Rank2Case c);

/// Placement of a rank-2 off-diagonal block B at rows {0,1} x cols {2,3}
/// after conjugation by perm, with the ranks of
///   B1 = rows {0,1} x cols {2, 4, ..., n-1}
///   B2 = rows {0,1} x cols {3, 4, ..., n-1}.
struct Rank2CaseTag {
  Rank2Case kind = Rank2Case::Case11;
  IndexPermutation perm;
  std::size_t rank_b = 2;
  std::size_t rank_b1 = 0;
  std::size_t rank_b2 = 0;
};

/// [[A1, B, 0], [B^T, A2, C], [0, C^T, D]], B invertible.
struct Rank2Form11 {
  IndexPermutation perm;
  IntegerMatrix a1;  // 2x2
  IntegerMatrix b;   // 2x2
  IntegerMatrix a2;  // 2x2
  IntegerMatrix c;   // 2 x (n-4)
  std::vector<Rational> d;
};

/// [[A1, g1, g2 xi^T], [g1^T, a, v^T], [xi g2^T, v, D + h xi xi^T]],
/// (g1, g2) invertible; xi primitive with positive leading nonzero entry.
struct Rank2Form21 {
  IndexPermutation perm;
  IntegerMatrix a1;                   // 2x2
  std::vector<Integer> gamma1;        // 2
  std::vector<Rational> gamma2;       // 2
  std::vector<Integer> xi;            // n-3
  Integer a;
  std::vector<Integer> v;             // n-3
  Rational h;
  std::vector<Rational> d;            // n-3
};

/// [[A1, Gamma C], [C^T Gamma^T, D + C^T H C]], Gamma invertible, rank(C) = 2.
struct Rank2Form22 {
  IndexPermutation perm;
  IntegerMatrix a1;      // 2x2
  RationalMatrix gamma;  // 2x2
  IntegerMatrix c;       // 2 x (n-2)
  RationalMatrix h;      // 2x2 symmetric
  std::vector<Rational> d;
  /// Set when the off-diagonal equations do not pin all three components of
  /// H; the free components are 0.
  bool h_underdetermined = false;
};

using StructureForm = std::variant<Rank1Form, Rank2Form11, Rank2Form21, Rank2Form22>;

RationalMatrix block_form(const Rank1Form& f);
RationalMatrix block_form(const Rank2Form11& f);
RationalMatrix block_form(const Rank2Form21& f);
RationalMatrix block_form(const Rank2Form22& f);
RationalMatrix block_form(const StructureForm& f);

/// Undoes the permutation of block_form(f). Throws NonIntegralAssembly when
/// an assembled entry is not an integer and InvalidArgument when a form
/// invariant (xi != 0, invertibility) fails.
SymmetricIntMatrix assemble(const Rank1Form& f);
SymmetricIntMatrix assemble(const Rank2Form11& f);
SymmetricIntMatrix assemble(const Rank2Form21& f);
SymmetricIntMatrix assemble(const Rank2Form22& f);
SymmetricIntMatrix assemble(const StructureForm& f);

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

/// Requires rank_off(A) = 1 (NotOffDiagRank1 otherwise). The permutation
/// moves the lexicographically first nonzero off-diagonal entry to (0, 1).
/// When xi has fewer than two nonzero coordinates h is not identifiable and
/// is set to 0.
Rank1Form decompose_rank1(const SymmetricIntMatrix& a);

/// Ranks of B, B1, B2 at a given placement; std::nullopt when rank(B) != 2.
/// For a (1, 2) rank pattern the two B columns are swapped so that the
/// returned tag always has rank(B1) >= rank(B2).
std::optional<Rank2CaseTag> tag_at_placement(const SymmetricIntMatrix& a, const IndexPermutation& p);

/// Requires rank_off(A) = 2 (NotOffDiagRank2 otherwise). Scans every
/// placement (i1 < i2, j1 < j2) of a rank-2 block and returns the minimal
/// case (Case11 < Case21 < Case22), lexicographic placement order breaking
/// ties; the result is therefore invariant under conjugation of A.
Rank2CaseTag classify_rank2(const SymmetricIntMatrix& a);

Rank2Form11 decompose_case11(const SymmetricIntMatrix& a, const Rank2CaseTag& tag);
Rank2Form21 decompose_case21(const SymmetricIntMatrix& a, const Rank2CaseTag& tag);
Rank2Form22 decompose_case22(const SymmetricIntMatrix& a, const Rank2CaseTag& tag);

/// Dispatch on rank_off(A) in {1, 2}; UnsupportedOffDiagRank otherwise.
StructureForm decompose(const SymmetricIntMatrix& a);

// ---------------------------------------------------------------------------
// Quintuples
// ---------------------------------------------------------------------------

enum class QuintupleKind { Rank1Quintuple, Rank2Quintuple };

/// Five pairwise distinct 0-based coordinate indices into xi/d (rank 1) or
/// into the columns of C and d (case 22).
struct QuintupleSelection {
  std::array<std::size_t, 5> b{};
  QuintupleKind kind = QuintupleKind::Rank1Quintuple;

  std::array<std::size_t, 5> one_based() const {
    auto out = b;
    for (auto& v : out) ++v;
    return out;
  }
};

/// c_{b1} d_{b2} d_{b3} d_{b4} d_{b5} != 0. Needs rank(A) >= 6.
QuintupleSelection find_quintuple_rank1(const Rank1Form& f, std::size_t rank_a);

/// rank(xi_{b1}, xi_{b2}) = 2 and d_{b3} d_{b4} d_{b5} != 0, xi_k the
/// columns of C. Needs rank(A) >= 8.
QuintupleSelection find_quintuple_case22(const Rank2Form22& f, std::size_t rank_a);

/// Post-hoc checks by direct evaluation, independent of the search.
bool quintuple_holds(const QuintupleSelection& q, const Rank1Form& f);
bool quintuple_holds(const QuintupleSelection& q, const Rank2Form22& f);

}  // namespace qfp
