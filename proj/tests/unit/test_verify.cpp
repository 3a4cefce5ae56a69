#include "qfp/arith.hpp"
#include "qfp/error.hpp"
#include "qfp/verify.hpp"

#include <gtest/gtest.h>

#include <map>
#include <memory>

using namespace qfp;

namespace {

// Per-matrix residue-count caches so injected evaluators stay fast.
LocalArithmetic& local_for(const SymmetricIntMatrix& a) {
  static std::map<std::vector<Integer>, std::unique_ptr<LocalArithmetic>> cache;
  auto& slot = cache[a.entries()];
  if (!slot) slot = std::make_unique<LocalArithmetic>(a);
  return *slot;
}

// CRT with the cofactor squared: agrees with the true sum on prime powers only
Complex squared_twist(const SymmetricIntMatrix& a, std::uint64_t q, std::uint64_t r) {
  auto& local = local_for(a);
  Complex out = 1.0;
  for (const auto& [p, e] : factorize(q)) {
    const std::uint64_t qi = ipow(p, e);
    const std::uint64_t co = (q / qi) % qi;
    out *= local.gauss_sum_direct(qi, (r % qi) * co % qi * co % qi);
  }
  return out;
}

}  // namespace

TEST(Verify, ModulesListed) {
  const auto& mods = verify_modules();
  EXPECT_EQ(mods.size(), 7u);
  EXPECT_NE(std::find(mods.begin(), mods.end(), "offdiag-rank"), mods.end());
  EXPECT_NE(std::find(mods.begin(), mods.end(), "cli-harness"), mods.end());
}

TEST(Verify, ScopeRunsOnlyThatModule) {
  VerifyOptions opt;
  opt.scope = "offdiag-rank";
  const auto rep = run_verify(opt);
  ASSERT_FALSE(rep.suites.empty());
  for (const auto& s : rep.suites) EXPECT_EQ(s.module, "offdiag-rank");
  EXPECT_TRUE(rep.overall());
  EXPECT_NE(rep.find("offdiag-oracle-equivalence"), nullptr);
  EXPECT_EQ(rep.find("gauss-crt"), nullptr);
}

TEST(Verify, UnknownScopeRejected) {
  VerifyOptions opt;
  opt.scope = "no-such-module";
  try {
    run_verify(opt);
    FAIL() << "expected InvalidArgument";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Verify, WrongGaussSumFailsCrtSuite) {
  VerifyOptions opt;
  opt.scope = "arithmetic-local";
  opt.gauss_sum = squared_twist;
  const auto rep = run_verify(opt);
  EXPECT_FALSE(rep.overall());
  const auto* crt = rep.find("gauss-crt");
  ASSERT_NE(crt, nullptr);
  EXPECT_GT(crt->failed, 0u);
  EXPECT_FALSE(crt->details.empty());
}

TEST(Verify, CorrectInjectedGaussSumPasses) {
  VerifyOptions opt;
  opt.scope = "arithmetic-local";
  opt.gauss_sum = [](const SymmetricIntMatrix& a, std::uint64_t q, std::uint64_t r) {
    return local_for(a).gauss_sum(q, r);
  };
  const auto rep = run_verify(opt);
  EXPECT_TRUE(rep.overall());
}

TEST(Verify, DeterministicUnderSeed) {
  VerifyOptions opt;
  opt.scope = "cli-harness";
  const auto a = run_verify(opt);
  const auto b = run_verify(opt);
  ASSERT_EQ(a.suites.size(), b.suites.size());
  for (std::size_t i = 0; i < a.suites.size(); ++i) {
    EXPECT_EQ(a.suites[i].passed, b.suites[i].passed);
    EXPECT_EQ(a.suites[i].failed, b.suites[i].failed);
  }
  EXPECT_TRUE(a.overall());
}
