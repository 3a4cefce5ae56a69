#pragma once

#include "qfp/arith.hpp"
#include "qfp/limits.hpp"
#include "qfp/matrix.hpp"
#include "qfp/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qfp {

/// Weighted number of x in prime powers <= X with x^T A x = t.
struct CountResult {
  std::uint64_t X = 0;
  double lambda_weighted = 0.0;
  std::uint64_t unit_count = 0;
  std::uint64_t prime_only_count = 0;
};

/// Enumerates n-1 coordinates over prime powers and solves the remaining one
/// exactly. BudgetExceeded when P^(n-1) > budget, P = #prime powers <= X.
CountResult count_solutions(const ProblemInstance& inst, std::uint64_t X, const Limits& limits = default_limits());

enum class Box {
  Positive,   // [1, X]
  Symmetric,  // [-X, X]
};

struct BilinearSystem {
  RationalMatrix c;  // n x k
  RationalMatrix h;  // n x m, m may be 0
  Box box = Box::Positive;
};

/// #{(x, y) in box^n x box^k : x^T C y = 0 and x^T H = 0}.
std::uint64_t count_bilinear(const BilinearSystem& sys, std::uint64_t X, const Limits& limits = default_limits());

struct PairedCount {
  bool weighted = false;
  std::uint64_t unit = 0;  // valid when !weighted
  double value = 0.0;      // unit count as a double, or the weighted sum
};

/// Pairs (x, y) in [1, X]^{2n} with x^T C x = y^T C y and x^T H = y^T H.
/// Weighted mode restricts to prime-power coordinates and weights each pair
/// by Lambda(x) Lambda(y).
PairedCount count_paired_system(const RationalMatrix& c, const RationalMatrix& h, std::uint64_t X, bool weighted,
                                const Limits& limits = default_limits());

/// lhs: unit paired count on [1, X]. rhs: #{(u, v) in [-2X, 2X]^{2n} :
/// u^T C v = 0, v^T H = 0}. (x, y) -> (x + y, x - y) maps the first set
/// injectively into the second, so lhs <= rhs must hold.
struct InjectionReport {
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  bool holds = false;
};
InjectionReport verify_sum_difference_injection(const RationalMatrix& c, const RationalMatrix& h, std::uint64_t X,
                                                const Limits& limits = default_limits());

struct GrowthFit {
  std::vector<std::pair<double, double>> samples;  // (X, count)
  double slope = 0.0;
  double intercept = 0.0;
  double predicted_exponent = 0.0;
  double deviation = 0.0;  // |slope - predicted|
};

/// Least-squares slope of log count against log X. DegenerateSamples for
/// fewer than three samples, non-increasing X or non-positive counts.
GrowthFit growth_exponent_fit(const std::vector<std::pair<double, double>>& samples, double predicted);

}  // namespace qfp
