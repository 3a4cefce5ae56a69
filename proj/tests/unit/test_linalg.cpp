#include "qfp/error.hpp"
#include "qfp/linalg.hpp"
#include "qfp/matrix.hpp"

#include <gtest/gtest.h>

using namespace qfp;

TEST(Rank, IdentityFive) { EXPECT_EQ(rank_rational(RationalMatrix::identity(5)), 5u); }

TEST(Rank, AllOnesThree) {
  EXPECT_EQ(rank_rational(RationalMatrix{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}), 1u);
}

TEST(Rank, DependentRows) { EXPECT_EQ(rank_rational(RationalMatrix{{1, 2}, {2, 4}}), 1u); }

TEST(Rank, RationalEntriesAndTranspose) {
  const RationalMatrix m{{Rational(1, 2), Rational(1, 3), 0}, {1, Rational(2, 3), 0}};
  EXPECT_EQ(rank_rational(m), 1u);
  EXPECT_EQ(rank_rational(m.transpose()), 1u);
}

TEST(Rank, BareissMatchesRational) {
  std::vector<Integer> e{2, 4, 1, 1, 2, 3, 3, 6, 4};
  EXPECT_EQ(rank_integer(e, 3, 3), 2u);
  EXPECT_EQ(rank_integer({}, 0, 3), 0u);
}

TEST(Rank, Submatrix) {
  const SymmetricIntMatrix a{{1, 2, 0}, {2, 1, 3}, {0, 3, 1}};
  EXPECT_EQ(rank_of_submatrix(a, {0}, {1, 2}), 1u);
  EXPECT_EQ(rank_of_submatrix(a, {0, 2}, {1}), 1u);
  EXPECT_EQ(rank(a), 3u);
}

TEST(Solve, Identity) {
  const auto x = solve_square(RationalMatrix::identity(2), {Rational(3), Rational(-1)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 3);
  EXPECT_EQ((*x)[1], -1);
}

TEST(Solve, Swap) {
  const auto x = solve_square(RationalMatrix{{0, 1}, {1, 0}}, {Rational(5), Rational(7)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 7);
  EXPECT_EQ((*x)[1], 5);
}

TEST(Solve, SingularHasNoUniqueSolution) {
  EXPECT_FALSE(solve_square(RationalMatrix{{1, 1}, {1, 1}}, {Rational(1), Rational(2)}));
  EXPECT_FALSE(solve_square(RationalMatrix{{1, 1}, {1, 1}}, {Rational(1), Rational(1)}));
}

TEST(Solve, ExactRoundTrip) {
  const RationalMatrix m{{2, 1, 0}, {Rational(1, 3), 5, -1}, {0, 4, Rational(7, 2)}};
  const std::vector<Rational> b{Rational(1, 7), -2, Rational(5, 3)};
  const auto x = solve_square(m, b);
  ASSERT_TRUE(x);
  EXPECT_EQ(m.multiply(*x), b);
}

TEST(Solve, LinearSystemFreeVariablesZero) {
  const RationalMatrix m{{1, 1, 0}, {0, 0, 1}};
  const auto r = solve_linear_system(m, {Rational(3), Rational(2)});
  ASSERT_TRUE(r.consistent);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.solution[0], 3);
  EXPECT_EQ(r.solution[1], 0);
  EXPECT_EQ(r.solution[2], 2);
  EXPECT_FALSE(r.pivot[1]);
  EXPECT_FALSE(solve_linear_system(RationalMatrix{{1, 1}, {2, 2}}, {Rational(1), Rational(3)}).consistent);
}

TEST(Determinant, Small) {
  EXPECT_EQ(determinant(RationalMatrix{{1, 2}, {3, 4}}), -2);
  EXPECT_EQ(determinant(RationalMatrix{{Rational(1, 2), 0}, {0, 6}}), 3);
}

TEST(Conjugate, IdentityPermutation) {
  const SymmetricIntMatrix a{{1, 2}, {2, 5}};
  EXPECT_EQ(conjugate_by_permutation(a, IndexPermutation::identity(2)), a);
}

TEST(Conjugate, SwapDiagonal) {
  EXPECT_EQ(conjugate_by_permutation(SymmetricIntMatrix::diagonal({1, 2}), IndexPermutation({1, 0})),
            SymmetricIntMatrix::diagonal({2, 1}));
}

TEST(Conjugate, RoundTrip) {
  const SymmetricIntMatrix a{{1, -2, 3, 0}, {-2, 4, 5, 1}, {3, 5, -1, 2}, {0, 1, 2, 7}};
  const IndexPermutation p({2, 0, 3, 1});
  EXPECT_EQ(conjugate_by_permutation(conjugate_by_permutation(a, p), p.inverse()), a);
  EXPECT_EQ(rank(conjugate_by_permutation(a, p)), rank(a));
}

TEST(Conjugate, LengthMismatchThrows) {
  EXPECT_THROW(conjugate_by_permutation(SymmetricIntMatrix::identity(3), IndexPermutation::identity(2)), Error);
}

TEST(Matrix, RejectsNonSymmetric) {
  try {
    SymmetricIntMatrix bad{{1, 2}, {3, 4}};
    FAIL() << "accepted a non-symmetric matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}

TEST(Matrix, PermutationMustBeBijective) { EXPECT_THROW(IndexPermutation({0, 0, 1}), Error); }

TEST(RationalText, ParseAndPrint) {
  EXPECT_EQ(to_string(*parse_rational("-6/4")), "-3/2");
  EXPECT_EQ(to_string(*parse_rational("8/4")), "2");
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("abc"));
}
