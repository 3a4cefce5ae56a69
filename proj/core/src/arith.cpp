#include "qfp/arith.hpp"

#include "qfp/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace qfp {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  const std::uint64_t v = saturating_pow(base, e);
  if (v == std::numeric_limits<std::uint64_t>::max()) {
    fail(ErrorCode::Overflow, std::to_string(base) + "^" + std::to_string(e) + " overflows");
  }
  return v;
}

std::vector<Complex> unit_roots(std::uint64_t q) {
  std::vector<Complex> tab(q);
  for (std::uint64_t j = 0; 2 * j <= q; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(q);
    tab[j] = Complex(std::cos(angle), std::sin(angle));
  }
  for (std::uint64_t j = 1; 2 * j < q; ++j) tab[q - j] = std::conj(tab[j]);
  if (q % 2 == 0) tab[q / 2] = Complex(-1.0, 0.0);
  return tab;
}

// ---------------------------------------------------------------------------

VonMangoldtTable::VonMangoldtTable(std::uint64_t x) : x_(x) {
  if (x < 1) fail(ErrorCode::InvalidArgument, "von Mangoldt table needs X >= 1");
  if (x > std::numeric_limits<std::uint32_t>::max()) fail(ErrorCode::InvalidArgument, "X too large for the sieve");
  spf_.assign(x + 1, 0);
  for (std::uint64_t i = 2; i <= x; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i; j <= x; j += i)
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
  }
  for (std::uint64_t k = 2; k <= x; ++k)
    if (entry(k).p != 0) prime_powers_.push_back(k);
}

PrimePower VonMangoldtTable::entry(std::uint64_t k) const {
  if (k < 2 || k > x_) return {};
  const std::uint64_t p = spf_[k];
  unsigned e = 0;
  while (k % p == 0) {
    k /= p;
    ++e;
  }
  if (k != 1) return {};
  return {p, e};
}

double VonMangoldtTable::lambda(std::uint64_t k) const {
  const auto pp = entry(k);
  return pp.p == 0 ? 0.0 : std::log(static_cast<double>(pp.p));
}

double VonMangoldtTable::psi() const {
  double s = 0.0;
  for (auto k : prime_powers_) s += lambda(k);
  return s;
}

// ---------------------------------------------------------------------------

ResidueCounts::ResidueCounts(const SymmetricIntMatrix& a, std::uint64_t q, const Limits& limits) : q_(q) {
  if (q == 0) fail(ErrorCode::InvalidArgument, "modulus must be >= 1");
  if (q > (1ULL << 31)) fail(ErrorCode::ModulusTooLarge, "modulus " + std::to_string(q) + " exceeds 2^31");
  const std::size_t n = a.n();
  std::vector<std::uint64_t> units;
  for (std::uint64_t h = 0; h < q; ++h)
    if (std::gcd(h, q) == 1) units.push_back(h);
  if (q == 1) units = {0};
  total_ = saturating_pow(units.size(), static_cast<unsigned>(n));
  if (total_ > limits.budget) {
    fail(ErrorCode::ModulusTooLarge, "enumerating " + std::to_string(units.size()) + "^" + std::to_string(n) +
                                         " unit vectors mod " + std::to_string(q) + " exceeds the budget " +
                                         std::to_string(limits.budget));
  }
  std::vector<std::uint64_t> c(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    Integer r = a.entries()[i] % Integer(static_cast<unsigned long>(q));
    if (r < 0) r += static_cast<unsigned long>(q);
    c[i] = r.get_ui();
  }

  auto count_from = [&](std::size_t first) {
    std::vector<std::uint64_t> local(q, 0);
    std::vector<std::uint64_t> h(n, 0);
    h[0] = units[first];
    // value of the form restricted to the first d coordinates
    auto rec = [&](auto&& self, std::size_t d, std::uint64_t acc) -> void {
      if (d == n) {
        ++local[acc];
        return;
      }
      std::uint64_t cross = 0;
      for (std::size_t j = 0; j < d; ++j) cross = (cross + c[d * n + j] * h[j]) % q;
      cross = (2 * cross) % q;
      for (auto u : units) {
        h[d] = u;
        const std::uint64_t add = (c[d * n + d] * u % q * u + cross * u) % q;
        self(self, d + 1, (acc + add) % q);
      }
    };
    const std::uint64_t start = c[0] * h[0] % q * h[0] % q;
    rec(rec, 1, start);
    return local;
  };
  const auto parts = parallel_map(units.size(), limits.threads, count_from);
  counts_.assign(q, 0);
  for (const auto& part : parts)
    for (std::uint64_t r = 0; r < q; ++r) counts_[r] += part[r];
}

Complex gauss_sum_from_counts(const ResidueCounts& counts, std::uint64_t a) {
  const std::uint64_t q = counts.modulus();
  if (std::gcd(a % q, q) != 1 && q != 1) {
    fail(ErrorCode::NotCoprime, "gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") != 1");
  }
  const auto tab = unit_roots(q);
  Complex s = 0.0;
  for (std::uint64_t r = 0; r < q; ++r) {
    const std::uint64_t c = counts.counts()[r];
    if (c == 0) continue;
    s += static_cast<double>(c) * tab[(r * (a % q)) % q];
  }
  return s;
}

// ---------------------------------------------------------------------------

LocalArithmetic::LocalArithmetic(SymmetricIntMatrix a, Limits limits) : a_(std::move(a)), limits_(limits) {}

const ResidueCounts& LocalArithmetic::counts(std::uint64_t q) {
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(q);
    if (it != cache_.end()) return *it->second;
  }
  auto fresh = std::make_unique<ResidueCounts>(a_, q, limits_);
  std::lock_guard lock(mu_);
  auto [it, inserted] = cache_.emplace(q, std::move(fresh));
  return *it->second;
}

Complex LocalArithmetic::gauss_sum_direct(std::uint64_t q, std::uint64_t a) {
  return gauss_sum_from_counts(counts(q), a);
}

Complex LocalArithmetic::gauss_sum(std::uint64_t q, std::uint64_t a) {
  if (q == 0) fail(ErrorCode::InvalidArgument, "modulus must be >= 1");
  if (std::gcd(a % q, q) != 1 && q != 1) {
    fail(ErrorCode::NotCoprime, "gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") != 1");
  }
  Complex value = 1.0;
  for (const auto& [p, e] : factorize(q)) {
    const std::uint64_t qi = ipow(p, e);
    const std::uint64_t rest = q / qi;
    const std::uint64_t ai = (a % qi) * (rest % qi) % qi;
    value *= gauss_sum_from_counts(counts(qi), ai);
  }
  return value;
}

Complex LocalArithmetic::term(std::uint64_t q, const Integer& t, SeriesNormalization norm) {
  if (q == 0) fail(ErrorCode::InvalidArgument, "modulus must be >= 1");
  Integer tq = t % Integer(static_cast<unsigned long>(q));
  if (tq < 0) tq += static_cast<unsigned long>(q);
  const std::uint64_t tr = tq.get_ui();
  const auto tab = unit_roots(q);
  Complex s = 0.0;
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    const std::uint64_t phase = (q - (a % q) * tr % q) % q;
    s += gauss_sum(q, a) * tab[phase];
  }
  const double phi = static_cast<double>(euler_phi(q));
  const double scale = norm == SeriesNormalization::PhiPowerN ? std::pow(phi, -static_cast<double>(a_.n())) : 1.0 / phi;
  return s * scale;
}

LocalDensity LocalArithmetic::local_density(std::uint64_t p, unsigned k, const Integer& t) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (k < 1) fail(ErrorCode::InvalidArgument, "exponent must be >= 1");
  LocalDensity out;
  out.p = p;
  out.k = k;
  out.modulus = ipow(p, k);
  const auto& c = counts(out.modulus);
  Integer tq = t % Integer(static_cast<unsigned long>(out.modulus));
  if (tq < 0) tq += static_cast<unsigned long>(out.modulus);
  out.count = c[tq.get_ui()];
  out.value = static_cast<double>(out.modulus) * static_cast<double>(out.count) / static_cast<double>(c.total());
  return out;
}

// ---------------------------------------------------------------------------

Complex gauss_sum_direct(const SymmetricIntMatrix& a, std::uint64_t q, std::uint64_t r, const Limits& limits) {
  return gauss_sum_from_counts(ResidueCounts(a, q, limits), r);
}

Complex gauss_sum(const SymmetricIntMatrix& a, std::uint64_t q, std::uint64_t r, const Limits& limits) {
  LocalArithmetic local(a, limits);
  return local.gauss_sum(q, r);
}

Complex term_T(const ProblemInstance& inst, std::uint64_t q, SeriesNormalization norm, const Limits& limits) {
  LocalArithmetic local(inst.a, limits);
  return local.term(q, inst.t, norm);
}

LocalDensity local_density(const ProblemInstance& inst, std::uint64_t p, unsigned k, const Limits& limits) {
  LocalArithmetic local(inst.a, limits);
  return local.local_density(p, k, inst.t);
}

SingularSeriesReport singular_series_truncated(LocalArithmetic& local, const Integer& t, std::uint64_t Q,
                                               const SeriesOptions& options) {
  if (Q < 1) fail(ErrorCode::InvalidArgument, "Q must be >= 1");
  SingularSeriesReport report;
  report.Q = Q;
  report.normalization = options.normalization;
  Complex running = 0.0;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    const Complex v = local.term(q, t, options.normalization);
    running += v;
    report.terms.push_back({q, v, running});
  }
  report.partial_sum = running;

  const auto n = static_cast<unsigned>(local.matrix().n());
  report.product_estimate = 1.0;
  for (auto p : options.primes) {
    if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    PrimeFactorEstimate est;
    est.p = p;
    for (unsigned k = 1; k <= options.max_exponent; ++k) {
      const std::uint64_t q = ipow(p, k);
      if (saturating_pow(euler_phi(q), n) > local.limits().budget) {
        if (k == 1) {
          fail(ErrorCode::ModulusTooLarge,
               "local density at p = " + std::to_string(p) + " exceeds the enumeration budget");
        }
        break;
      }
      const auto d = local.local_density(p, k, t);
      report.local_densities.push_back(d);
      est.k = k;
      est.sigma = d.value;
    }
    report.sigma.push_back(est);
    report.product_estimate *= est.sigma;
  }
  return report;
}

SingularSeriesReport singular_series_truncated(const ProblemInstance& inst, std::uint64_t Q,
                                               const SeriesOptions& options) {
  LocalArithmetic local(inst.a, options.limits);
  return singular_series_truncated(local, inst.t, Q, options);
}

}  // namespace qfp
