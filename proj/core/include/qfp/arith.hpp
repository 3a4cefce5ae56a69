#pragma once

#include "qfp/limits.hpp"
#include "qfp/matrix.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace qfp {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// elementary helpers
// ---------------------------------------------------------------------------

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
bool is_prime(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned e);  // throws Overflow

/// e(j / q) for j in [0, q); entry q - j is the exact conjugate of entry j.
std::vector<Complex> unit_roots(std::uint64_t q);

// ---------------------------------------------------------------------------
// von Mangoldt
// ---------------------------------------------------------------------------

struct PrimePower {
  std::uint64_t p = 0;  // 0 when k is not a prime power
  unsigned e = 0;
};

class VonMangoldtTable {
 public:
  explicit VonMangoldtTable(std::uint64_t x);

  std::uint64_t bound() const { return x_; }
  PrimePower entry(std::uint64_t k) const;
  bool is_prime_power(std::uint64_t k) const { return entry(k).p != 0; }
  bool is_prime(std::uint64_t k) const { return entry(k).e == 1; }
  double lambda(std::uint64_t k) const;
  /// Chebyshev psi(X) = sum of lambda(k) for k <= X.
  double psi() const;
  /// All prime powers in [2, X], ascending.
  const std::vector<std::uint64_t>& prime_powers() const { return prime_powers_; }

 private:
  std::uint64_t x_;
  std::vector<std::uint32_t> spf_;  // smallest prime factor, 0 for k < 2
  std::vector<std::uint64_t> prime_powers_;
};

// ---------------------------------------------------------------------------
// Gauss sums, singular series, local densities
// ---------------------------------------------------------------------------

/// N_q(r) = #{h in ((Z/q)^x)^n : h^T A h = r mod q} for r in [0, q).
class ResidueCounts {
 public:
  ResidueCounts(const SymmetricIntMatrix& a, std::uint64_t q, const Limits& limits);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t operator[](std::uint64_t r) const { return counts_[r % q_]; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  /// phi(q)^n
  std::uint64_t total() const { return total_; }

 private:
  std::uint64_t q_;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> counts_;
};

/// Sum over r of N_q(r) e(r a / q). NotCoprime unless gcd(a, q) = 1.
Complex gauss_sum_from_counts(const ResidueCounts& counts, std::uint64_t a);

enum class SeriesNormalization {
  PhiPowerN,  // phi(q)^{-n}
  PhiOnce,    // 1 / phi(q), kept for comparison
};

struct LocalDensity {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::uint64_t modulus = 0;
  std::uint64_t count = 0;  // N_{p^k}(t)
  double value = 0.0;       // p^k phi(p^k)^{-n} count
};

/// Per-matrix cache of residue counts for prime-power moduli; composite
/// moduli are handled by CRT. Thread-safe.
class LocalArithmetic {
 public:
  explicit LocalArithmetic(SymmetricIntMatrix a, Limits limits = default_limits());

  const SymmetricIntMatrix& matrix() const { return a_; }
  const Limits& limits() const { return limits_; }

  /// Cached counts. ModulusTooLarge when phi(q)^n exceeds the budget.
  const ResidueCounts& counts(std::uint64_t q);

  /// Direct evaluation at modulus q.
  Complex gauss_sum_direct(std::uint64_t q, std::uint64_t a);
  /// Product over prime powers q_i || q of C(q_i, a (q / q_i) mod q_i).
  Complex gauss_sum(std::uint64_t q, std::uint64_t a);

  Complex term(std::uint64_t q, const Integer& t, SeriesNormalization norm = SeriesNormalization::PhiPowerN);
  LocalDensity local_density(std::uint64_t p, unsigned k, const Integer& t);

 private:
  SymmetricIntMatrix a_;
  Limits limits_;
  std::mutex mu_;
  std::map<std::uint64_t, std::unique_ptr<ResidueCounts>> cache_;
};

Complex gauss_sum_direct(const SymmetricIntMatrix& a, std::uint64_t q, std::uint64_t r,
                         const Limits& limits = default_limits());
Complex gauss_sum(const SymmetricIntMatrix& a, std::uint64_t q, std::uint64_t r,
                  const Limits& limits = default_limits());

/// Injectable Gauss-sum evaluator, so suites can be run against a faulty one.
using GaussSumFn = std::function<Complex(const SymmetricIntMatrix&, std::uint64_t q, std::uint64_t a)>;

struct ProblemInstance {
  SymmetricIntMatrix a;
  Integer t;
  std::size_t n() const { return a.n(); }
};

Complex term_T(const ProblemInstance& inst, std::uint64_t q,
               SeriesNormalization norm = SeriesNormalization::PhiPowerN,
               const Limits& limits = default_limits());

LocalDensity local_density(const ProblemInstance& inst, std::uint64_t p, unsigned k,
                           const Limits& limits = default_limits());

struct SeriesOptions {
  std::vector<std::uint64_t> primes{2, 3, 5};
  unsigned max_exponent = 3;
  SeriesNormalization normalization = SeriesNormalization::PhiPowerN;
  Limits limits = default_limits();
};

struct SeriesTerm {
  std::uint64_t q = 0;
  Complex value;
  Complex partial_sum;
};

struct PrimeFactorEstimate {
  std::uint64_t p = 0;
  unsigned k = 0;  // largest exponent within budget
  double sigma = 0.0;
};

struct SingularSeriesReport {
  std::uint64_t Q = 0;
  SeriesNormalization normalization = SeriesNormalization::PhiPowerN;
  std::vector<SeriesTerm> terms;
  Complex partial_sum;
  std::vector<LocalDensity> local_densities;
  std::vector<PrimeFactorEstimate> sigma;
  double product_estimate = 1.0;
};

SingularSeriesReport singular_series_truncated(const ProblemInstance& inst, std::uint64_t Q,
                                               const SeriesOptions& options = {});
/// Same, sharing a cache across calls with different t.
SingularSeriesReport singular_series_truncated(LocalArithmetic& local, const Integer& t, std::uint64_t Q,
                                               const SeriesOptions& options);

}  // namespace qfp
