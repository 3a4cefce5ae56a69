#pragma once

#include "qfp/arith.hpp"
#include "qfp/limits.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfp {

struct SuiteResult {
  std::string name;
  std::string module;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> details;
  double seconds = 0.0;

  bool ok() const { return failed == 0; }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  double seconds = 0.0;

  bool overall() const;
  const SuiteResult* find(const std::string& name) const;
};

struct VerifyOptions {
  /// "all" or one module name (see verify_modules()).
  std::string scope = "all";
  Limits limits = default_limits();
  std::uint64_t seed = 20240611;
  /// Replaces the Gauss-sum evaluator in the CRT suite; empty means the
  /// library's cached direct evaluation.
  GaussSumFn gauss_sum;
};

const std::vector<std::string>& verify_modules();

/// Runs every suite in scope. Failures are report entries, never exceptions;
/// an unknown scope throws InvalidArgument.
VerifyReport run_verify(const VerifyOptions& options = {});

struct SoftTrendReport {
  std::uint64_t share_x_small = 200;
  std::uint64_t share_x_large = 400;
  std::optional<double> share_small;
  std::optional<double> share_large;
  bool share_increases = false;

  std::uint64_t weyl_x_small = 1000;
  std::uint64_t weyl_x_large = 10000;
  double weyl_ratio_small = 0.0;
  double weyl_ratio_large = 0.0;
  bool weyl_decreases = false;
};

/// Major share of A = I_4 at X and 2X (K = 2, t = 4 mod 24 near 2X^2) and the
/// minor-arc Weyl ratio sup|probe| / X at 10^3 and 10^4 (K = 1, grid 10^4).
SoftTrendReport run_soft_trends(const Limits& limits = default_limits());

}  // namespace qfp
