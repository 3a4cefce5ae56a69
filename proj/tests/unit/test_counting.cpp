#include "qfp/counting.hpp"
#include "qfp/error.hpp"
#include "qfp/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace qfp;

namespace {

template <class F>
void expect_code(ErrorCode code, F&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), code) << err.what();
  }
}

const double kLog2 = std::log(2.0);
const double kLog3 = std::log(3.0);
const double kLog5 = std::log(5.0);

Limits threads(unsigned k) {
  Limits l;
  l.threads = k;
  return l;
}

}  // namespace

TEST(CountSolutions, SumOfTwoSquares) {
  const auto r = count_solutions({SymmetricIntMatrix::diagonal({1, 1}), 8}, 10);
  EXPECT_EQ(r.unit_count, 1u);
  EXPECT_EQ(r.prime_only_count, 1u);
  EXPECT_NEAR(r.lambda_weighted, kLog2 * kLog2, 1e-12);
}

TEST(CountSolutions, TwiceProduct) {
  const auto r = count_solutions({SymmetricIntMatrix{{0, 1}, {1, 0}}, 12}, 10);
  EXPECT_EQ(r.unit_count, 2u);
}

TEST(CountSolutions, FiveSquaresAtTen) {
  const ProblemInstance inst{SymmetricIntMatrix::identity(5), 53};
  const auto r = count_solutions(inst, 10);
  const auto o = oracle::count_solutions(inst, 10);
  EXPECT_EQ(r.unit_count, 20u);  // permutations of (2,2,2,4,5)
  EXPECT_EQ(r.prime_only_count, 0u);
  EXPECT_NEAR(r.lambda_weighted, 7.43029518360155, 1e-9);
  EXPECT_EQ(r.unit_count, o.unit_count);
  EXPECT_EQ(r.prime_only_count, o.prime_only_count);
  EXPECT_NEAR(r.lambda_weighted, o.lambda_weighted, 1e-9 * o.lambda_weighted);
}

TEST(CountSolutions, MatchesOracleOnRandomTernaries) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int i = 0; i < 10; ++i) {
    std::vector<Integer> e(9);
    for (int r = 0; r < 3; ++r)
      for (int c = r; c < 3; ++c) e[r * 3 + c] = e[c * 3 + r] = coef(rng);
    if (i % 3 == 0) e[8] = 0;  // exercise the linear fallback
    const SymmetricIntMatrix a(3, e);
    const ProblemInstance inst{a, coef(rng) * 10};
    const auto fast = count_solutions(inst, 30);
    const auto slow = oracle::count_solutions(inst, 30);
    EXPECT_EQ(fast.unit_count, slow.unit_count) << i;
    EXPECT_EQ(fast.prime_only_count, slow.prime_only_count) << i;
    EXPECT_NEAR(fast.lambda_weighted, slow.lambda_weighted, 1e-9 * (1 + slow.lambda_weighted)) << i;
  }
}

TEST(CountSolutions, LambdaBoundedByLogPower) {
  for (long t : {20, 53, 77, 101}) {
    const auto r = count_solutions({SymmetricIntMatrix::identity(4), t}, 20);
    EXPECT_LE(r.prime_only_count, r.unit_count);
    EXPECT_LE(r.lambda_weighted, std::pow(std::log(20.0), 4) * static_cast<double>(r.unit_count) + 1e-9);
  }
}

TEST(CountSolutions, ThreadCountDoesNotChangeResults) {
  const ProblemInstance inst{SymmetricIntMatrix{{1, 1, 0}, {1, 2, 0}, {0, 0, -1}}, 30};
  const auto one = count_solutions(inst, 200, threads(1));
  const auto many = count_solutions(inst, 200, threads(4));
  EXPECT_EQ(one.unit_count, many.unit_count);
  EXPECT_EQ(one.prime_only_count, many.prime_only_count);
  EXPECT_EQ(one.lambda_weighted, many.lambda_weighted);
}

TEST(CountSolutions, BudgetExceeded) {
  Limits tiny;
  tiny.budget = 1000;
  expect_code(ErrorCode::BudgetExceeded, [&] { count_solutions({SymmetricIntMatrix::identity(5), 53}, 1000, tiny); });
}

TEST(CountBilinear, Examples) {
  EXPECT_EQ(count_bilinear({RationalMatrix(2, 2), RationalMatrix(2, 0)}, 3), 81u);
  const RationalMatrix c{{1, 0}, {0, -1}};
  EXPECT_EQ(count_bilinear({c, RationalMatrix(2, 0)}, 4), 32u);
  EXPECT_EQ(count_bilinear({c, RationalMatrix(2, 0)}, 4), oracle::count_bilinear({c, RationalMatrix(2, 0)}, 4));
  EXPECT_EQ(count_bilinear({RationalMatrix{{1}}, RationalMatrix(1, 0)}, 10), 0u);
}

TEST(CountBilinear, SymmetricBox) {
  // xy = 0 on [-2, 2]^2
  BilinearSystem sys{RationalMatrix{{1}}, RationalMatrix(1, 0), Box::Symmetric};
  EXPECT_EQ(count_bilinear(sys, 2), 9u);
  EXPECT_EQ(count_bilinear(sys, 2), oracle::count_bilinear(sys, 2));
}

TEST(CountBilinear, TransposeSymmetry) {
  const RationalMatrix c{{1, 2, -1}, {0, 3, 1}};
  const BilinearSystem fwd{c, RationalMatrix(2, 0)};
  const BilinearSystem back{c.transpose(), RationalMatrix(3, 0)};
  EXPECT_EQ(count_bilinear(fwd, 5), count_bilinear(back, 5));
  EXPECT_EQ(count_bilinear(fwd, 5), oracle::count_bilinear(fwd, 5));
}

TEST(CountBilinear, LinearConstraintAndRationalEntries) {
  const BilinearSystem sys{RationalMatrix{{Rational(1, 2), 0}, {0, Rational(-1, 3)}}, RationalMatrix{{1}, {-1}}};
  EXPECT_EQ(count_bilinear(sys, 6), oracle::count_bilinear(sys, 6));
}

TEST(CountPaired, Examples) {
  const auto one = count_paired_system(RationalMatrix{{1}}, RationalMatrix(1, 0), 5, false);
  EXPECT_EQ(one.unit, 5u);
  const RationalMatrix c{{1, 0}, {0, -1}};
  const auto hyp = count_paired_system(c, RationalMatrix(2, 0), 3, false);
  EXPECT_EQ(hyp.unit, 15u);
  EXPECT_EQ(hyp.unit, oracle::count_paired_system(c, RationalMatrix(2, 0), 3, false).unit);
  const auto w = count_paired_system(RationalMatrix{{1}}, RationalMatrix(1, 0), 5, true);
  EXPECT_NEAR(w.value, 2 * kLog2 * kLog2 + kLog3 * kLog3 + kLog5 * kLog5, 1e-12);
}

TEST(Injection, WorkedExamples) {
  const auto a = verify_sum_difference_injection(RationalMatrix{{1}}, RationalMatrix(1, 0), 3);
  EXPECT_EQ(a.lhs, 3u);
  EXPECT_EQ(a.rhs, 25u);
  EXPECT_TRUE(a.holds);
  const auto b = verify_sum_difference_injection(RationalMatrix{{1, 0}, {0, -1}}, RationalMatrix(2, 0), 3);
  EXPECT_EQ(b.lhs, 15u);
  EXPECT_EQ(b.rhs, 1313u);
  EXPECT_TRUE(b.holds);
}

TEST(Injection, WithLinearConstraint) {
  const RationalMatrix c{{2, 1}, {1, 0}};
  const RationalMatrix h{{1}, {1}};
  const auto r = verify_sum_difference_injection(c, h, 5);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.lhs, oracle::count_paired_system(c, h, 5, false).unit);
}

TEST(GrowthFit, Synthetic) {
  std::vector<std::pair<double, double>> cubic, flat;
  for (double x : {10.0, 20.0, 40.0, 80.0}) {
    cubic.emplace_back(x, 7 * x * x * x);
    flat.emplace_back(x, 12.0);
  }
  const auto f = growth_exponent_fit(cubic, 3);
  EXPECT_NEAR(f.slope, 3.0, 1e-9);
  EXPECT_NEAR(f.deviation, 0.0, 1e-9);
  EXPECT_NEAR(growth_exponent_fit(flat, 0).slope, 0.0, 1e-12);
}

TEST(GrowthFit, DegenerateSamples) {
  expect_code(ErrorCode::DegenerateSamples, [] { growth_exponent_fit({{1, 1}, {2, 2}}, 1); });
  expect_code(ErrorCode::DegenerateSamples, [] { growth_exponent_fit({{1, 1}, {3, 2}, {2, 3}}, 1); });
  expect_code(ErrorCode::DegenerateSamples, [] { growth_exponent_fit({{1, 1}, {2, 0}, {3, 3}}, 1); });
}

TEST(GrowthFit, HyperbolicBilinearLadder) {
  const BilinearSystem sys{RationalMatrix{{1, 0}, {0, -1}}, RationalMatrix(2, 0)};
  std::vector<std::pair<double, double>> samples;
  for (std::uint64_t x : {50u, 100u, 200u, 400u})
    samples.emplace_back(static_cast<double>(x), static_cast<double>(count_bilinear(sys, x)));
  const auto f = growth_exponent_fit(samples, 2);
  EXPECT_GE(f.slope, 1.75);
  EXPECT_LE(f.slope, 2.25);
}
