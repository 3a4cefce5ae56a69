#include "qfp/error.hpp"
#include "qfp/generators.hpp"
#include "qfp/linalg.hpp"
#include "qfp/offdiag.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace qfp;

namespace {

SymmetricIntMatrix eight_with_identity_block() {
  std::vector<Integer> e(64, 0);
  for (int i = 0; i < 8; ++i) e[i * 8 + i] = i + 1;
  e[0 * 8 + 2] = e[2 * 8 + 0] = 1;
  e[1 * 8 + 3] = e[3 * 8 + 1] = 1;
  return SymmetricIntMatrix(8, e);
}

void expect_valid_witness(const SymmetricIntMatrix& a, const OffDiagReport& r) {
  for (auto i : r.witness_rows)
    EXPECT_EQ(std::count(r.witness_cols.begin(), r.witness_cols.end(), i), 0) << "I and J intersect";
  EXPECT_TRUE(std::is_sorted(r.witness_rows.begin(), r.witness_rows.end()));
  EXPECT_TRUE(std::is_sorted(r.witness_cols.begin(), r.witness_cols.end()));
  if (r.value > 0) EXPECT_EQ(rank_of_submatrix(a, r.witness_rows, r.witness_cols), r.value);
}

}  // namespace

TEST(OffDiagRank, DiagonalIsZero) {
  const auto a = SymmetricIntMatrix::diagonal({1, 2, 3, 4});
  EXPECT_EQ(offdiag_rank(a).value, 0u);
  EXPECT_EQ(offdiag_rank_oracle(a).value, 0u);
}

TEST(OffDiagRank, AllOnesIsOne) {
  std::vector<Integer> e(25, 1);
  const SymmetricIntMatrix a(5, e);
  const auto fast = offdiag_rank(a);
  EXPECT_EQ(fast.value, 1u);
  EXPECT_EQ(offdiag_rank_oracle(a).value, 1u);
  expect_valid_witness(a, fast);
}

TEST(OffDiagRank, IdentityBlockInEightIsTwo) {
  const auto a = eight_with_identity_block();
  const auto fast = offdiag_rank(a);
  const auto slow = offdiag_rank_oracle(a);
  EXPECT_EQ(fast.value, 2u);
  EXPECT_EQ(slow.value, 2u);
  expect_valid_witness(a, fast);
  expect_valid_witness(a, slow);
}

TEST(OffDiagRank, StarFormIsOne) {
  // a row/column xi with h = 0: every off-diagonal block sits in a rank-one pattern
  const SymmetricIntMatrix a{{3, 1, -2, 4, 0}, {1, 5, 0, 0, 0}, {-2, 0, 1, 0, 0}, {4, 0, 0, 2, 0}, {0, 0, 0, 0, 7}};
  EXPECT_EQ(offdiag_rank(a).value, 1u);
  EXPECT_EQ(offdiag_rank_oracle(a).value, 1u);
}

TEST(OffDiagRank, GeneratedCase22IsTwo) {
  const auto inst = generate_instance(FormKind::Case22, 7, 11);
  EXPECT_EQ(offdiag_rank(inst.matrix).value, 2u);
  EXPECT_EQ(offdiag_rank_oracle(inst.matrix).value, 2u);
}

TEST(OffDiagRank, TooSmall) {
  try {
    offdiag_rank(SymmetricIntMatrix{{4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoOffDiagonalSubmatrix);
  }
  EXPECT_THROW(offdiag_rank_oracle(SymmetricIntMatrix{{4}}), Error);
}

TEST(OffDiagRank, AgreesWithOracleAndInvariants) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto a = random_symmetric(n, -5, 5, rng);
    const auto fast = offdiag_rank(a);
    ASSERT_EQ(fast.value, offdiag_rank_oracle(a).value);
    expect_valid_witness(a, fast);
    EXPECT_LE(fast.value, rank(a));
    EXPECT_LE(fast.value, n / 2);
    const auto p = random_permutation(n, rng);
    EXPECT_EQ(offdiag_rank(conjugate_by_permutation(a, p)).value, fast.value);
    std::vector<Integer> scaled = a.entries();
    for (auto& v : scaled) v *= -3;
    EXPECT_EQ(offdiag_rank(SymmetricIntMatrix(n, scaled)).value, fast.value);
  }
}

TEST(OffDiagRank, EightByEightAtMostFour) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) EXPECT_LE(offdiag_rank(random_symmetric(8, -5, 5, rng)).value, 4u);
}

TEST(OffDiagRank, DeterministicWitness) {
  std::mt19937_64 rng(9);
  const auto a = random_symmetric(7, -2, 2, rng);
  const auto r1 = offdiag_rank(a), r2 = offdiag_rank(a);
  EXPECT_EQ(r1.witness_rows, r2.witness_rows);
  EXPECT_EQ(r1.witness_cols, r2.witness_cols);
}
