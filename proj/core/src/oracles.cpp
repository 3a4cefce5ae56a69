#include "qfp/oracles.hpp"

#include "qfp/error.hpp"
#include "qfp/linalg.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

namespace qfp::oracle {

namespace {

// Calls fn on every tuple of `dims` values; the tuple is passed as indices.
template <typename Fn>
void odometer(std::size_t base, std::size_t dims, Fn&& fn) {
  std::vector<std::size_t> idx(dims, 0);
  if (base == 0 && dims > 0) return;
  for (;;) {
    fn(idx);
    std::size_t pos = 0;
    while (pos < dims && ++idx[pos] == base) idx[pos++] = 0;
    if (pos == dims) return;
  }
}

Integer quad(const SymmetricIntMatrix& a, const std::vector<Integer>& x) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) s += a(i, j) * x[i] * x[j];
  return s;
}

Rational rquad(const RationalMatrix& c, const std::vector<Integer>& x, const std::vector<Integer>& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) s += c(i, j) * x[i] * y[j];
  return s;
}

bool h_matches(const RationalMatrix& h, const std::vector<Integer>& x, const std::vector<Integer>& y) {
  for (std::size_t col = 0; col < h.cols(); ++col) {
    Rational sx = 0, sy = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      sx += h(i, col) * x[i];
      sy += h(i, col) * y[i];
    }
    if (sx != sy) return false;
  }
  return true;
}

}  // namespace

CountResult count_solutions(const ProblemInstance& inst, std::uint64_t X) {
  const VonMangoldtTable table(X);
  const auto& pp = table.prime_powers();
  const std::size_t n = inst.a.n();
  CountResult out;
  out.X = X;
  std::vector<Integer> x(n);
  odometer(pp.size(), n, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<unsigned long>(pp[idx[i]]);
    if (quad(inst.a, x) != inst.t) return;
    ++out.unit_count;
    bool prime = true;
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      prime = prime && table.is_prime(pp[idx[i]]);
      w *= table.lambda(pp[idx[i]]);
    }
    if (prime) ++out.prime_only_count;
    out.lambda_weighted += w;
  });
  return out;
}

std::uint64_t count_bilinear(const BilinearSystem& sys, std::uint64_t X) {
  const std::size_t n = sys.c.rows();
  const std::size_t k = sys.c.cols();
  std::vector<long> values;
  const long b = static_cast<long>(X);
  for (long v = sys.box == Box::Positive ? 1 : -b; v <= b; ++v) values.push_back(v);
  std::vector<Integer> x(n), y(k), zero(n);
  std::uint64_t count = 0;
  odometer(values.size(), n, [&](const std::vector<std::size_t>& ix) {
    for (std::size_t i = 0; i < n; ++i) x[i] = values[ix[i]];
    if (!h_matches(sys.h, x, zero)) return;
    odometer(values.size(), k, [&](const std::vector<std::size_t>& iy) {
      for (std::size_t j = 0; j < k; ++j) y[j] = values[iy[j]];
      if (rquad(sys.c, x, y) == 0) ++count;
    });
  });
  return count;
}

PairedCount count_paired_system(const RationalMatrix& c, const RationalMatrix& h, std::uint64_t X, bool weighted) {
  const std::size_t n = c.rows();
  std::vector<std::uint64_t> values;
  std::vector<double> w;
  const VonMangoldtTable table(std::max<std::uint64_t>(X, 1));
  for (std::uint64_t v = 1; v <= X; ++v) {
    if (weighted && !table.is_prime_power(v)) continue;
    values.push_back(v);
    w.push_back(weighted ? table.lambda(v) : 1.0);
  }
  PairedCount out;
  out.weighted = weighted;
  std::vector<Integer> x(n), y(n);
  odometer(values.size(), n, [&](const std::vector<std::size_t>& ix) {
    double wx = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<unsigned long>(values[ix[i]]);
      wx *= w[ix[i]];
    }
    const Rational qx = rquad(c, x, x);
    odometer(values.size(), n, [&](const std::vector<std::size_t>& iy) {
      double wy = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = static_cast<unsigned long>(values[iy[i]]);
        wy *= w[iy[i]];
      }
      if (rquad(c, y, y) != qx || !h_matches(h, x, y)) return;
      ++out.unit;
      out.value += wx * wy;
    });
  });
  if (!weighted) out.value = static_cast<double>(out.unit);
  return out;
}

std::uint64_t residue_count(const SymmetricIntMatrix& a, std::uint64_t q, const Integer& t) {
  const std::size_t n = a.n();
  std::vector<std::uint64_t> units;
  for (std::uint64_t h = 0; h < q; ++h)
    if (std::gcd(h, q) == 1) units.push_back(h);
  std::vector<Integer> x(n);
  std::uint64_t count = 0;
  const Integer qz = static_cast<unsigned long>(q);
  odometer(units.size(), n, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<unsigned long>(units[idx[i]]);
    Integer diff = quad(a, x) - t;
    if (diff % qz == 0) ++count;
  });
  return count;
}

Complex gauss_sum(const SymmetricIntMatrix& a, std::uint64_t q, std::uint64_t r) {
  const std::size_t n = a.n();
  std::vector<std::uint64_t> units;
  for (std::uint64_t h = 0; h < q; ++h)
    if (std::gcd(h, q) == 1) units.push_back(h);
  std::vector<Integer> x(n);
  Complex s = 0.0;
  const Integer qz = static_cast<unsigned long>(q);
  odometer(units.size(), n, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<unsigned long>(units[idx[i]]);
    Integer v = quad(a, x) * static_cast<unsigned long>(r) % qz;
    if (v < 0) v += qz;
    const double angle = 2.0 * std::numbers::pi * v.get_d() / static_cast<double>(q);
    s += Complex(std::cos(angle), std::sin(angle));
  });
  return s;
}

Complex s_alpha(const SymmetricIntMatrix& a, std::uint64_t X, Weights weights, double alpha) {
  const VonMangoldtTable table(X);
  const auto& pp = table.prime_powers();
  const std::size_t n = a.n();
  std::vector<Integer> x(n);
  Complex s = 0.0;
  odometer(pp.size(), n, [&](const std::vector<std::size_t>& idx) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<unsigned long>(pp[idx[i]]);
      if (weights == Weights::Lambda) w *= table.lambda(pp[idx[i]]);
    }
    const double m = quad(a, x).get_d();
    const double angle = 2.0 * std::numbers::pi * std::fmod(alpha * m, 1.0);
    s += w * Complex(std::cos(angle), std::sin(angle));
  });
  return s;
}

bool rank1_quintuple_exists(const Rank1Form& f) {
  const std::size_t m = f.xi.size();
  if (m < 5) return false;
  for (std::size_t b1 = 0; b1 < m; ++b1) {
    if (f.xi[b1] == 0) continue;
    std::size_t nonzero_d = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (j != b1 && f.d[j] != 0) ++nonzero_d;
    if (nonzero_d >= 4) return true;
  }
  return false;
}

bool case22_quintuple_exists(const Rank2Form22& f) {
  const std::size_t m = f.c.cols();
  for (std::size_t b1 = 0; b1 < m; ++b1)
    for (std::size_t b2 = b1 + 1; b2 < m; ++b2) {
      RationalMatrix pair(2, 2);
      for (std::size_t i = 0; i < 2; ++i) {
        pair(i, 0) = Rational(f.c(i, b1));
        pair(i, 1) = Rational(f.c(i, b2));
      }
      if (rank_rational(pair) != 2) continue;
      std::size_t nonzero_d = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != b1 && j != b2 && f.d[j] != 0) ++nonzero_d;
      if (nonzero_d >= 3) return true;
    }
  return false;
}

}  // namespace qfp::oracle
