#include "qfp/arith.hpp"
#include "qfp/error.hpp"
#include "qfp/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

using namespace qfp;

namespace {

constexpr double kTol = 1e-9;

Complex e(double x) { return std::polar(1.0, 2 * std::numbers::pi * x); }

void expect_close(Complex got, Complex want, double tol = kTol) {
  EXPECT_NEAR(got.real(), want.real(), tol * (1 + std::abs(want))) << got << " vs " << want;
  EXPECT_NEAR(got.imag(), want.imag(), tol * (1 + std::abs(want))) << got << " vs " << want;
}

template <class F>
void expect_code(ErrorCode code, F&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), code) << err.what();
  }
}

// trial-division Lambda, independent of the sieve
double lambda_slow(std::uint64_t k) {
  if (k < 2) return 0;
  for (std::uint64_t p = 2; p <= k; ++p) {
    if (k % p) continue;
    std::uint64_t m = k;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return 0;
}

}  // namespace

TEST(Elementary, FactorizeAndPhi) {
  using F = std::vector<std::pair<std::uint64_t, unsigned>>;
  EXPECT_EQ(factorize(360), (F{{2, 3}, {3, 2}, {5, 1}}));
  EXPECT_EQ(factorize(1), F{});
  EXPECT_EQ(euler_phi(1), 1u);
  EXPECT_EQ(euler_phi(12), 4u);
  EXPECT_EQ(euler_phi(97), 96u);
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(ipow(3, 4), 81u);
  expect_code(ErrorCode::Overflow, [] { ipow(10, 30); });
}

TEST(Elementary, UnitRootsConjugatePairs) {
  const auto r = unit_roots(12);
  ASSERT_EQ(r.size(), 12u);
  EXPECT_EQ(r[0], Complex(1, 0));
  for (std::size_t j = 1; j < 12; ++j) EXPECT_EQ(r[12 - j], std::conj(r[j]));
}

TEST(VonMangoldt, PrimePowers) {
  const VonMangoldtTable t(100);
  EXPECT_DOUBLE_EQ(t.lambda(2), std::log(2.0));
  EXPECT_DOUBLE_EQ(t.lambda(8), std::log(2.0));
  EXPECT_DOUBLE_EQ(t.lambda(9), std::log(3.0));
  EXPECT_EQ(t.entry(8).p, 2u);
  EXPECT_EQ(t.entry(8).e, 3u);
}

TEST(VonMangoldt, NonPrimePowersVanish) {
  const VonMangoldtTable t(100);
  EXPECT_EQ(t.lambda(1), 0.0);
  EXPECT_EQ(t.lambda(6), 0.0);
  EXPECT_EQ(t.lambda(12), 0.0);
  EXPECT_FALSE(t.is_prime_power(1));
}

TEST(VonMangoldt, ChebyshevPsiAtHundred) {
  const VonMangoldtTable t(100);
  double direct = 0;
  for (std::uint64_t k = 1; k <= 100; ++k) direct += lambda_slow(k);
  EXPECT_NEAR(t.psi(), direct, 1e-9);
  EXPECT_NEAR(t.psi(), 94.045, 1e-3);
  for (std::uint64_t k = 1; k <= 100; ++k) EXPECT_NEAR(t.lambda(k), lambda_slow(k), 1e-15) << k;
}

TEST(GaussSum, TrivialModulus) {
  expect_close(gauss_sum(SymmetricIntMatrix::identity(3), 1, 1), 1.0);
}

TEST(GaussSum, ParityAtTwo) {
  for (std::size_t n = 1; n <= 5; ++n)
    expect_close(gauss_sum(SymmetricIntMatrix::identity(n), 2, 1), n % 2 ? -1.0 : 1.0);
}

TEST(GaussSum, IdentityTwoModFour) {
  expect_close(gauss_sum(SymmetricIntMatrix::identity(2), 4, 1), -4.0);
  expect_close(gauss_sum_direct(SymmetricIntMatrix::identity(2), 4, 1), -4.0);
}

TEST(GaussSum, CompositeMatchesOracle) {
  const SymmetricIntMatrix a{{1, 2, 0}, {2, -3, 1}, {0, 1, 5}};
  for (std::uint64_t q : {6u, 10u, 12u, 15u}) {
    for (std::uint64_t r = 1; r < q; ++r) {
      if (std::gcd(r, q) != 1) continue;
      const Complex want = oracle::gauss_sum(a, q, r);
      expect_close(gauss_sum(a, q, r), want);
      expect_close(gauss_sum_direct(a, q, r), want);
    }
  }
}

TEST(GaussSum, TwistUsesFirstPowerOfTheCofactor) {
  // A = [1], q = 12 = 4 * 3: squaring the cofactor would give 4 e(7/12)
  const SymmetricIntMatrix a{{1}};
  const Complex right = gauss_sum(a, 12, 1);
  expect_close(right, 4.0 * e(1.0 / 12));
  const Complex squared = gauss_sum_direct(a, 4, (1 * 9) % 4) * gauss_sum_direct(a, 3, (1 * 16) % 3);
  expect_close(squared, 4.0 * e(7.0 / 12));
  EXPECT_GT(std::abs(squared - right), 1.0);
}

TEST(GaussSum, Conjugation) {
  const SymmetricIntMatrix a{{2, 1}, {1, -1}};
  for (std::uint64_t q : {5u, 8u, 9u, 14u}) {
    for (std::uint64_t r = 1; r < q; ++r) {
      if (std::gcd(r, q) != 1) continue;
      const Complex x = gauss_sum(a, q, r);
      const Complex y = gauss_sum(a, q, q - r);
      EXPECT_NEAR(std::abs(x - std::conj(y)), 0.0, 1e-12);
    }
  }
}

TEST(GaussSum, Errors) {
  expect_code(ErrorCode::NotCoprime, [] { gauss_sum(SymmetricIntMatrix::identity(2), 6, 3); });
  Limits tiny;
  tiny.budget = 100;
  expect_code(ErrorCode::ModulusTooLarge, [&] { gauss_sum_direct(SymmetricIntMatrix::identity(4), 11, 1, tiny); });
}

TEST(ResidueCounts, SmallCases) {
  const Limits lim;
  EXPECT_EQ(ResidueCounts(SymmetricIntMatrix::identity(2), 3, lim)[2], 4u);
  const ResidueCounts c(SymmetricIntMatrix::identity(5), 8, lim);
  EXPECT_EQ(c[53], 1024u);
  EXPECT_EQ(c[53], oracle::residue_count(SymmetricIntMatrix::identity(5), 8, 53));
  EXPECT_EQ(c.total(), 1024u);
}

TEST(SeriesTerm, FirstTerms) {
  const ProblemInstance inst{SymmetricIntMatrix::identity(2), 2};
  expect_close(term_T(inst, 1), 1.0);
  expect_close(term_T(inst, 2), 1.0);
}

TEST(SeriesTerm, PrimePowerPartialSumIsDensity) {
  const ProblemInstance inst{SymmetricIntMatrix::identity(5), 53};
  Complex sum = 0;
  for (std::uint64_t q : {1u, 2u, 4u, 8u}) sum += term_T(inst, q);
  expect_close(sum, 8.0);
  // 8 phi(8)^-5 N_8(t)
  expect_close(sum, 8.0 * 1024.0 / std::pow(4.0, 5));
}

TEST(SeriesTerm, PhiOnceNormalizationBreaksIdentity) {
  const ProblemInstance inst{SymmetricIntMatrix::identity(2), 2};
  const Complex a = term_T(inst, 5, SeriesNormalization::PhiPowerN);
  const Complex b = term_T(inst, 5, SeriesNormalization::PhiOnce);
  expect_close(b, a * 4.0);
  Complex sum = 0;
  for (std::uint64_t q : {1u, 5u}) sum += term_T(inst, q, SeriesNormalization::PhiOnce);
  EXPECT_GT(std::abs(sum - local_density(inst, 5, 1).value), 1e-3);
}

TEST(LocalDensity, Examples) {
  const ProblemInstance five{SymmetricIntMatrix::identity(5), 5};
  EXPECT_NEAR(local_density(five, 2, 3).value, 8.0, kTol);
  const ProblemInstance one{SymmetricIntMatrix::identity(5), 1};
  EXPECT_EQ(local_density(one, 2, 3).value, 0.0);
  const ProblemInstance two{SymmetricIntMatrix::identity(2), 2};
  const auto d = local_density(two, 3, 1);
  EXPECT_EQ(d.count, 4u);
  EXPECT_NEAR(d.value, 3.0, kTol);
}

TEST(LocalDensity, BudgetIsEnforced) {
  Limits tiny;
  tiny.budget = 1000;
  const ProblemInstance inst{SymmetricIntMatrix::identity(5), 5};
  expect_code(ErrorCode::ModulusTooLarge, [&] { local_density(inst, 5, 2, tiny); });
}

TEST(SingularSeries, TruncationAtOne) {
  const ProblemInstance inst{SymmetricIntMatrix{{1, 3}, {3, -2}}, 7};
  const auto r = singular_series_truncated(inst, 1);
  expect_close(r.partial_sum, 1.0);
  ASSERT_EQ(r.terms.size(), 1u);
}

TEST(SingularSeries, HuaObstructions) {
  SeriesOptions opts;
  opts.primes = {2, 3};
  opts.max_exponent = 3;
  const SymmetricIntMatrix i5 = SymmetricIntMatrix::identity(5);
  const auto good = singular_series_truncated({i5, 53}, 24, opts);
  EXPECT_GT(good.product_estimate, 0.0);
  bool saw8 = false;
  for (const auto& d : good.local_densities) {
    if (d.modulus == 8) {
      saw8 = true;
      EXPECT_NEAR(d.value, 8.0, kTol);
    }
    if (d.modulus == 3) EXPECT_GT(d.value, 0.0);
  }
  EXPECT_TRUE(saw8);
  EXPECT_NEAR(good.partial_sum.imag(), 0.0, 1e-9 * (1 + std::abs(good.partial_sum.real())));
  EXPECT_EQ(singular_series_truncated({i5, 54}, 8, opts).product_estimate, 0.0);
  EXPECT_EQ(singular_series_truncated({i5, 13}, 8, opts).product_estimate, 0.0);  // mod 3
  EXPECT_GT(singular_series_truncated({i5, 29}, 8, opts).product_estimate, 0.0);
}

TEST(SingularSeries, SharedCacheMatchesFresh) {
  SeriesOptions opts;
  opts.primes = {2, 3};
  LocalArithmetic local(SymmetricIntMatrix::identity(3));
  for (long t : {3, 11, 17}) {
    const auto a = singular_series_truncated(local, t, 30, opts);
    const auto b = singular_series_truncated({SymmetricIntMatrix::identity(3), t}, 30, opts);
    expect_close(a.partial_sum, b.partial_sum, 1e-12);
  }
}
