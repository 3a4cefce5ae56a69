#pragma once

#include "qfp/arith.hpp"
#include "qfp/limits.hpp"
#include "qfp/matrix.hpp"
#include "qfp/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qfp {

enum class Weights { Unit, Lambda };

/// m -> r(m): weighted number of prime-power tuples x <= X with x^T A x = m.
struct RepresentationHistogram {
  std::uint64_t X = 0;
  std::size_t n = 0;
  Weights weights = Weights::Unit;
  std::vector<std::int64_t> m;  // ascending
  std::vector<double> r;
  std::int64_t m_min = 0;
  std::int64_t m_max = 0;

  double at(std::int64_t value) const;
  double total_mass() const;
};

RepresentationHistogram representation_histogram(const SymmetricIntMatrix& a, std::uint64_t X, Weights weights,
                                                 const Limits& limits = default_limits());

/// Histogram of a form with no cross terms between `first` and its
/// complement, built from the two halves by a hash join. SplitUnavailable if
/// a cross term exists.
RepresentationHistogram representation_histogram_split(const SymmetricIntMatrix& a,
                                                       const std::vector<std::size_t>& first, std::uint64_t X,
                                                       Weights weights, const Limits& limits = default_limits());

/// A block split (first index set) when the off-diagonal graph of A is
/// disconnected, otherwise std::nullopt.
std::optional<std::vector<std::size_t>> find_block_split(const SymmetricIntMatrix& a);

/// S(alpha) = sum_m r(m) e(alpha m).
Complex s_alpha(const RepresentationHistogram& hist, double alpha);

struct Arc {
  std::uint64_t a = 0;  // center = a / q exactly
  std::uint64_t q = 0;
  Rational halfwidth;

  Rational center() const { return make_rational(Integer(static_cast<unsigned long>(a)), Integer(static_cast<unsigned long>(q))); }
};

struct ArcFamily {
  std::uint64_t X = 0;
  double K = 0.0;
  double P = 0.0;  // (log X)^K; converted exactly to a rational for the halfwidths
  bool full_cover = false;
  std::vector<Arc> arcs;  // ascending by center

  Rational measure() const;
  double lower() const { return 1.0 / static_cast<double>(X); }
};

/// All arcs |alpha - a/q| <= P/(q X^2), 1 <= a <= q <= P, gcd(a, q) = 1.
/// PTooLarge when P > X/2. Disjointness is checked exactly.
ArcFamily build_arcs(std::uint64_t X, double K);

/// A single arc covering [1/X, 1 + 1/X].
ArcFamily full_cover_arcs(std::uint64_t X);

/// Exact rational pairwise check.
bool arcs_disjoint(const ArcFamily& family);

struct PerModulusContribution {
  std::uint64_t q = 0;
  std::size_t arcs = 0;
  Complex integral;
};

struct MajorArcReport {
  std::int64_t t = 0;
  Complex I_major;
  Complex I_minor;
  double I_total = 0.0;  // r(t)
  std::optional<double> major_share;
  double residual = 0.0;  // |I_major + I_minor - r(t)|
  double gap_measure = 0.0;
  std::vector<PerModulusContribution> per_q;
};

/// Integrates S(alpha) e(-alpha t) exactly over every arc and over every gap
/// of [1/X, 1 + 1/X] between them.
MajorArcReport major_arc_integral(const RepresentationHistogram& hist, std::int64_t t, const ArcFamily& arcs);

/// Truncated singular series times X^{n-2}.
double predicted_main_term(const SingularSeriesReport& series, std::uint64_t X, std::size_t n);

/// sum_{x <= X} Lambda(x) e(alpha d x^2 + beta x).
Complex weyl_probe(const Rational& d, double beta, const VonMangoldtTable& table, double alpha);
Complex weyl_probe(const Rational& d, double beta, std::uint64_t X, double alpha);

struct ScanPoint {
  double alpha = 0.0;
  double abs = 0.0;
};

struct MinorArcScan {
  std::uint64_t X = 0;
  std::size_t grid = 0;
  std::size_t sampled = 0;  // grid points off the major arcs
  bool empty = false;
  double sup_abs = 0.0;
  double argmax_alpha = 0.0;
  double psi = 0.0;
  std::vector<ScanPoint> points;
};

/// Grid alpha_i = 1/X + i/grid on [1/X, 1 + 1/X), major arcs of `arcs`
/// skipped, beta = 0.
MinorArcScan minor_arc_scan(const Rational& d, const ArcFamily& arcs, std::size_t grid,
                            const Limits& limits = default_limits());

}  // namespace qfp
