#include "qfp/arcs.hpp"
#include "qfp/counting.hpp"
#include "qfp/error.hpp"
#include "qfp/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

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

double rel(Complex got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST(Histogram, SingleSquare) {
  const auto h = representation_histogram(SymmetricIntMatrix{{1}}, 5, Weights::Unit);
  EXPECT_EQ(h.m, (std::vector<std::int64_t>{4, 9, 16, 25}));
  for (double v : h.r) EXPECT_EQ(v, 1.0);
  EXPECT_EQ(h.m_min, 4);
  EXPECT_EQ(h.m_max, 25);
}

TEST(Histogram, TwoSquares) {
  const auto h = representation_histogram(SymmetricIntMatrix::diagonal({1, 1}), 5, Weights::Unit);
  EXPECT_EQ(h.at(8), 1.0);
  EXPECT_EQ(h.at(13), 2.0);
  EXPECT_EQ(h.at(29), 2.0);
  EXPECT_EQ(h.at(9), 0.0);
  EXPECT_EQ(h.total_mass(), 16.0);
}

TEST(Histogram, TwiceProduct) {
  const auto h = representation_histogram(SymmetricIntMatrix{{0, 1}, {1, 0}}, 3, Weights::Unit);
  EXPECT_EQ(h.at(8), 1.0);
  EXPECT_EQ(h.at(12), 2.0);
  EXPECT_EQ(h.at(18), 1.0);
}

TEST(Histogram, LambdaMassIsPsiPower) {
  const VonMangoldtTable table(40);
  const auto h = representation_histogram(SymmetricIntMatrix{{1, 2, 0}, {2, -1, 1}, {0, 1, 3}}, 40, Weights::Lambda);
  const double want = std::pow(table.psi(), 3);
  EXPECT_NEAR(h.total_mass(), want, 1e-9 * want);
  for (double v : h.r) EXPECT_GT(v, 0.0);
}

TEST(Histogram, AgreesWithCounting) {
  const SymmetricIntMatrix a{{2, 1, 0}, {1, 1, 0}, {0, 0, 3}};
  const auto unit = representation_histogram(a, 30, Weights::Unit);
  const auto lam = representation_histogram(a, 30, Weights::Lambda);
  for (long t : {50, 77, 120, 333}) {
    const auto c = count_solutions({a, t}, 30);
    EXPECT_EQ(unit.at(t), static_cast<double>(c.unit_count));
    EXPECT_NEAR(lam.at(t), c.lambda_weighted, 1e-9 * (1 + c.lambda_weighted));
  }
}

TEST(Histogram, SplitMatchesDirect) {
  const auto a = SymmetricIntMatrix{{1, 1, 0}, {1, 2, 0}, {0, 0, -1}};
  const auto split = find_block_split(a);
  ASSERT_TRUE(split.has_value());
  const auto joined = representation_histogram_split(a, *split, 25, Weights::Lambda);
  const auto direct = representation_histogram(a, 25, Weights::Lambda);
  ASSERT_EQ(joined.m, direct.m);
  for (std::size_t i = 0; i < direct.r.size(); ++i) EXPECT_NEAR(joined.r[i], direct.r[i], 1e-9 * direct.r[i]);
}

TEST(Histogram, SplitUnavailableWithCrossTerms) {
  const auto a = SymmetricIntMatrix{{1, 1}, {1, 1}};
  EXPECT_FALSE(find_block_split(a).has_value());
  expect_code(ErrorCode::SplitUnavailable, [&] { representation_histogram_split(a, {0}, 10, Weights::Unit); });
}

TEST(SAlpha, PeriodAndMass) {
  const auto h = representation_histogram(SymmetricIntMatrix::diagonal({1, 3}), 30, Weights::Lambda);
  EXPECT_NEAR(rel(s_alpha(h, 0.0), h.total_mass()), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s_alpha(h, 1.0) - s_alpha(h, 0.0)), 0.0, 1e-9 * h.total_mass());
  EXPECT_NEAR(std::abs(s_alpha(h, 1.37) - s_alpha(h, 0.37)), 0.0, 1e-9 * h.total_mass());
}

TEST(SAlpha, HalfMatchesDirectSum) {
  const SymmetricIntMatrix a = SymmetricIntMatrix::diagonal({1, 1});
  const auto h = representation_histogram(a, 10, Weights::Lambda);
  const Complex got = s_alpha(h, 0.5);
  const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0), l7 = std::log(7.0);
  const double one_dim = 3 * l2 - 2 * l3 - l5 - l7;
  EXPECT_NEAR(got.real(), one_dim * one_dim, 1e-9);
  EXPECT_NEAR(got.real(), 13.4918920568195, 1e-9);
  const Complex direct = oracle::s_alpha(a, 10, Weights::Lambda, 0.5);
  EXPECT_NEAR(std::abs(got - direct), 0.0, 1e-9 * std::abs(direct));
}

TEST(SAlpha, RandomAlphasMatchDirectSum) {
  const SymmetricIntMatrix a{{2, -1}, {-1, 3}};
  const auto h = representation_histogram(a, 50, Weights::Lambda);
  for (double alpha : {0.013, 0.25, 0.618, 0.9}) {
    const Complex direct = oracle::s_alpha(a, 50, Weights::Lambda, alpha);
    EXPECT_NEAR(std::abs(s_alpha(h, alpha) - direct), 0.0, 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST(Arcs, CountAtTenthPowerOfE) {
  EXPECT_EQ(build_arcs(22027, 1).arcs.size(), 32u);
  EXPECT_EQ(build_arcs(22026, 1).arcs.size(), 28u);  // log X just below 10
}

TEST(Arcs, UnitModulusCenteredAtOne) {
  const auto fam = build_arcs(22027, 1);
  const auto it = std::find_if(fam.arcs.begin(), fam.arcs.end(), [](const Arc& a) { return a.q == 1; });
  ASSERT_NE(it, fam.arcs.end());
  EXPECT_EQ(it->a, 1u);
  EXPECT_EQ(it->center(), 1);
  EXPECT_NEAR(it->halfwidth.get_d(), fam.P / (22027.0 * 22027.0), 1e-18);
}

TEST(Arcs, ZeroExponentSingleArc) {
  const auto fam = build_arcs(100, 0);
  EXPECT_DOUBLE_EQ(fam.P, 1.0);
  ASSERT_EQ(fam.arcs.size(), 1u);
  EXPECT_EQ(fam.arcs[0].q, 1u);
}

TEST(Arcs, MeasureAndDisjointness) {
  const auto fam = build_arcs(5000, 1.5);
  EXPECT_TRUE(arcs_disjoint(fam));
  double want = 0;
  for (std::uint64_t q = 1; q <= static_cast<std::uint64_t>(fam.P); ++q)
    want += 2 * fam.P / (static_cast<double>(q) * 5000.0 * 5000.0) * static_cast<double>(euler_phi(q));
  EXPECT_NEAR(fam.measure().get_d(), want, 1e-12);
}

TEST(Arcs, PTooLarge) {
  expect_code(ErrorCode::PTooLarge, [] { build_arcs(10, 5); });
}

TEST(MajorArcs, FullCoverRecoversCount) {
  const SymmetricIntMatrix a = SymmetricIntMatrix::diagonal({1, 2, 3});
  const auto h = representation_histogram(a, 60, Weights::Lambda);
  for (std::int64_t t : {100, 444, 1234}) {
    const auto rep = major_arc_integral(h, t, full_cover_arcs(60));
    EXPECT_NEAR(rel(rep.I_major, h.at(t)), 0.0, 1e-6) << t;
    EXPECT_EQ(rep.I_total, h.at(t));
  }
}

TEST(MajorArcs, CompletenessOnRealArcs) {
  const SymmetricIntMatrix a{{1, 1, 0}, {1, 2, 0}, {0, 0, -1}};
  const auto h = representation_histogram(a, 120, Weights::Lambda);
  const auto fam = build_arcs(120, 1.5);
  for (std::int64_t t : {50, 345, 1001}) {
    const auto rep = major_arc_integral(h, t, fam);
    EXPECT_LE(rep.residual, 1e-6 * std::max(1.0, rep.I_total)) << t;
    EXPECT_NEAR(rel(rep.I_major + rep.I_minor, rep.I_total), 0.0, 1e-6);
  }
}

TEST(MajorArcs, OutsideSpectrumCancels) {
  const auto h = representation_histogram(SymmetricIntMatrix::diagonal({1, 1}), 30, Weights::Unit);
  const auto rep = major_arc_integral(h, h.m_max + 5, build_arcs(30, 1));
  EXPECT_EQ(rep.I_total, 0.0);
  EXPECT_FALSE(rep.major_share.has_value());
  EXPECT_NEAR(std::abs(rep.I_major + rep.I_minor), 0.0, 1e-6);
}

TEST(Weyl, ZeroPhaseIsPsi) {
  const VonMangoldtTable table(1000);
  const Complex v = weyl_probe(Rational(1), 0.0, 1000, 0.0);
  EXPECT_NEAR(v.real(), table.psi(), 1e-9);
  EXPECT_NEAR(v.imag(), 0.0, 1e-12);
}

TEST(Weyl, HalfAtTen) {
  const double want = 3 * std::log(2.0) - 2 * std::log(3.0) - std::log(5.0) - std::log(7.0);
  const Complex v = weyl_probe(Rational(1), 0.0, 10, 0.5);
  EXPECT_NEAR(v.real(), want, 1e-12);
  EXPECT_NEAR(v.imag(), 0.0, 1e-12);
}

TEST(Weyl, ScanStaysBelowPsi) {
  const auto scan = minor_arc_scan(Rational(1), build_arcs(1000, 1), 10000);
  EXPECT_FALSE(scan.empty);
  EXPECT_GT(scan.sampled, 0u);
  EXPECT_LT(scan.sup_abs, scan.psi);
}

TEST(Weyl, EmptyScanWhenArcsCoverEverything) {
  const auto scan = minor_arc_scan(Rational(1), full_cover_arcs(100), 10);
  EXPECT_TRUE(scan.empty);
  EXPECT_EQ(scan.sampled, 0u);
}
