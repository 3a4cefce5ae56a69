#include "qfp/counting.hpp"

#include "qfp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

namespace qfp {

namespace {

__extension__ using i128 = __int128;

i128 isqrt(i128 v) {
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::int64_t narrow(i128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    fail(ErrorCode::Overflow, std::string(what) + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t to_i64(const Integer& z, const char* what) {
  const auto v = to_int64(z);
  if (!v) fail(ErrorCode::Overflow, std::string(what) + " does not fit in 64 bits");
  return *v;
}

void check_budget(std::uint64_t work, const Limits& limits, const std::string& what) {
  if (work > limits.budget) {
    fail(ErrorCode::BudgetExceeded, what + " needs ~" +
                                        (work == std::numeric_limits<std::uint64_t>::max() ? std::string("2^64")
                                                                                           : std::to_string(work)) +
                                        " steps, budget is " + std::to_string(limits.budget));
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Whole matrix scaled by the lcm of its denominators.
std::vector<std::int64_t> integer_scaled(const RationalMatrix& m) {
  const Integer l = lcm_of_denominators(m.entries());
  std::vector<std::int64_t> out;
  out.reserve(m.entries().size());
  for (const auto& v : m.entries()) out.push_back(to_i64(Integer(v * l), "scaled matrix entry"));
  return out;
}

// Each nonzero column scaled to integers on its own; zero columns dropped.
std::vector<std::vector<std::int64_t>> integer_columns(const RationalMatrix& m) {
  std::vector<std::vector<std::int64_t>> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<Rational> col(m.rows());
    bool nonzero = false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      col[i] = m(i, j);
      nonzero = nonzero || col[i] != 0;
    }
    if (!nonzero) continue;
    const Integer l = lcm_of_denominators(col);
    std::vector<std::int64_t> c;
    for (const auto& v : col) c.push_back(to_i64(Integer(v * l), "scaled H entry"));
    cols.push_back(std::move(c));
  }
  return cols;
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Odometer over a fixed value list for `dims` coordinates.
template <typename Fn>
void for_each_tuple(const std::vector<std::int64_t>& values, std::size_t dims, Fn&& fn) {
  std::vector<std::size_t> idx(dims, 0);
  std::vector<std::int64_t> x(dims);
  if (values.empty() && dims > 0) return;
  for (std::size_t i = 0; i < dims; ++i) x[i] = values[0];
  for (;;) {
    fn(x);
    std::size_t pos = dims;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < values.size()) {
        x[pos] = values[idx[pos]];
        break;
      }
      idx[pos] = 0;
      x[pos] = values[0];
      if (pos == 0) return;
    }
    if (dims == 0) return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

CountResult count_solutions(const ProblemInstance& inst, std::uint64_t X, const Limits& limits) {
  if (X < 2) fail(ErrorCode::InvalidArgument, "count_solutions needs X >= 2");
  const std::size_t n = inst.a.n();
  const auto a64 = inst.a.to_int64();
  const i128 t = narrow(i128(to_i64(inst.t, "t")), "t");

  std::size_t last = n;
  for (std::size_t i = n; i-- > 0;)
    if (a64[i * n + i] != 0) {
      last = i;
      break;
    }
  if (last == n) last = n - 1;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (i != last) order.push_back(i);

  const VonMangoldtTable table(X);
  const auto& pp = table.prime_powers();
  check_budget(saturating_pow(pp.size(), static_cast<unsigned>(n - 1)), limits, "prime-power prefix enumeration");

  const std::size_t m = n - 1;
  auto coef = [&](std::size_t i, std::size_t j) { return i128(a64[order[i] * n + order[j]]); };
  auto coef_last = [&](std::size_t i) { return i128(a64[order[i] * n + last]); };
  const i128 a_ll = a64[last * n + last];

  struct Partial {
    double weighted = 0.0;
    std::uint64_t unit = 0;
    std::uint64_t prime = 0;
  };

  auto run = [&](std::size_t first) {
    Partial out;
    std::vector<std::int64_t> x(m);
    auto leaf = [&](i128 quad, i128 lin, double weight, bool all_prime) {
      auto accept = [&](i128 y) {
        if (y < 2 || y > static_cast<i128>(X)) return;
        const auto e = table.entry(static_cast<std::uint64_t>(y));
        if (e.p == 0) return;
        ++out.unit;
        if (all_prime && e.e == 1) ++out.prime;
        out.weighted += weight * std::log(static_cast<double>(e.p));
      };
      const i128 c0 = quad - t;
      if (a_ll != 0) {
        const i128 disc = lin * lin - a_ll * c0;
        if (disc < 0) return;
        const i128 s = isqrt(disc);
        if (s * s != disc) return;
        i128 roots[2] = {-lin - s, -lin + s};
        if (a_ll < 0) std::swap(roots[0], roots[1]);
        for (int r = 0; r < (s == 0 ? 1 : 2); ++r)
          if (roots[r] % a_ll == 0) accept(roots[r] / a_ll);
      } else if (lin != 0) {
        if ((-c0) % (2 * lin) == 0) accept(-c0 / (2 * lin));
      } else if (c0 == 0) {
        for (auto y : pp) accept(static_cast<i128>(y));
      }
    };
    auto rec = [&](auto&& self, std::size_t d, i128 quad, double weight, bool all_prime) -> void {
      if (d == m) {
        i128 lin = 0;
        for (std::size_t i = 0; i < m; ++i) lin += coef_last(i) * x[i];
        leaf(quad, lin, weight, all_prime);
        return;
      }
      const std::size_t lo = d == 0 ? first : 0;
      const std::size_t hi = d == 0 ? first + 1 : pp.size();
      i128 cross = 0;
      for (std::size_t j = 0; j < d; ++j) cross += coef(d, j) * x[j];
      for (std::size_t idx = lo; idx < hi; ++idx) {
        const auto v = static_cast<std::int64_t>(pp[idx]);
        x[d] = v;
        const auto e = table.entry(pp[idx]);
        self(self, d + 1, quad + coef(d, d) * v * v + 2 * cross * v, weight * std::log(static_cast<double>(e.p)),
             all_prime && e.e == 1);
      }
    };
    rec(rec, 0, 0, 1.0, true);
    return out;
  };

  CountResult result;
  result.X = X;
  if (m == 0) {
    const auto p = run(0);
    result.unit_count = p.unit;
    result.prime_only_count = p.prime;
    result.lambda_weighted = p.weighted;
    return result;
  }
  const auto parts = parallel_map(pp.size(), limits.threads, run);
  for (const auto& p : parts) {
    result.unit_count += p.unit;
    result.prime_only_count += p.prime;
    result.lambda_weighted += p.weighted;
  }
  return result;
}

// ---------------------------------------------------------------------------

std::uint64_t count_bilinear(const BilinearSystem& sys, std::uint64_t X, const Limits& limits) {
  if (X < 1) fail(ErrorCode::InvalidArgument, "count_bilinear needs X >= 1");
  const std::size_t n = sys.c.rows();
  const std::size_t k = sys.c.cols();
  if (n == 0 || k == 0) fail(ErrorCode::DimensionMismatch, "C must be non-empty");
  if (sys.h.cols() > 0 && sys.h.rows() != n) fail(ErrorCode::DimensionMismatch, "H must have as many rows as C");
  const auto c = integer_scaled(sys.c);
  const auto hcols = integer_columns(sys.h);

  std::vector<std::int64_t> values;
  const auto bound = static_cast<std::int64_t>(X);
  for (std::int64_t v = sys.box == Box::Positive ? 1 : -bound; v <= bound; ++v) values.push_back(v);
  const std::uint64_t r = values.size();

  // x_{n-1} is solved from the first H column that involves it
  std::size_t solve_col = hcols.size();
  for (std::size_t j = 0; j < hcols.size(); ++j)
    if (hcols[j][n - 1] != 0) {
      solve_col = j;
      break;
    }
  const bool solve_last = solve_col < hcols.size();
  const std::size_t free_dims = solve_last ? n - 1 : n;
  check_budget(saturating_mul(saturating_pow(r, static_cast<unsigned>(free_dims)),
                              saturating_pow(r, static_cast<unsigned>(k - 1))),
               limits, "bilinear enumeration");

  const std::uint64_t all_y = saturating_pow(r, static_cast<unsigned>(k));

  auto count_y = [&](std::vector<std::int64_t> w, std::map<std::vector<std::int64_t>, std::uint64_t>& cache) {
    std::int64_t g = 0;
    for (auto v : w) g = std::gcd(g, v < 0 ? -v : v);
    if (g == 0) return all_y;
    std::size_t lead = 0;
    while (w[lead] == 0) ++lead;
    if (w[lead] < 0) g = -g;
    for (auto& v : w) v /= g;
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    std::size_t j = k;
    while (w[--j] == 0) {
    }
    std::vector<std::int64_t> others;
    for (std::size_t i = 0; i < k; ++i)
      if (i != j) others.push_back(w[i]);
    std::uint64_t cnt = 0;
    const std::int64_t wj = w[j];
    for_each_tuple(values, k - 1, [&](const std::vector<std::int64_t>& y) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < y.size(); ++i) s += others[i] * y[i];
      if (s % wj != 0) return;
      const std::int64_t yj = -s / wj;
      if (yj >= values.front() && yj <= values.back()) ++cnt;
    });
    cache.emplace(std::move(w), cnt);
    return cnt;
  };

  auto run = [&](std::size_t first) {
    std::map<std::vector<std::int64_t>, std::uint64_t> cache;
    std::uint64_t total = 0;
    std::vector<std::int64_t> x(n);
    std::vector<std::int64_t> w(k);
    auto visit = [&](const std::vector<std::int64_t>& prefix) {
      for (std::size_t i = 0; i < free_dims; ++i) x[i] = prefix[i];
      if (solve_last) {
        const auto& col = hcols[solve_col];
        i128 s = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) s += i128(col[i]) * x[i];
        if (s % col[n - 1] != 0) return;
        const i128 v = -s / col[n - 1];
        if (v < values.front() || v > values.back()) return;
        x[n - 1] = static_cast<std::int64_t>(v);
      }
      for (const auto& col : hcols) {
        i128 s = 0;
        for (std::size_t i = 0; i < n; ++i) s += i128(col[i]) * x[i];
        if (s != 0) return;
      }
      for (std::size_t j = 0; j < k; ++j) {
        i128 s = 0;
        for (std::size_t i = 0; i < n; ++i) s += i128(c[i * k + j]) * x[i];
        w[j] = narrow(s, "C^T x");
      }
      total += count_y(w, cache);
    };
    if (free_dims == 0) {
      visit({});
      return total;
    }
    std::vector<std::int64_t> prefix(free_dims);
    prefix[0] = values[first];
    for_each_tuple(values, free_dims - 1, [&](const std::vector<std::int64_t>& rest) {
      for (std::size_t i = 0; i < rest.size(); ++i) prefix[i + 1] = rest[i];
      visit(prefix);
    });
    return total;
  };

  const std::size_t tasks = free_dims == 0 ? 1 : values.size();
  const auto parts = parallel_map(tasks, limits.threads, run);
  std::uint64_t total = 0;
  for (auto p : parts) total += p;
  return total;
}

// ---------------------------------------------------------------------------

PairedCount count_paired_system(const RationalMatrix& c, const RationalMatrix& h, std::uint64_t X, bool weighted,
                                const Limits& limits) {
  const std::size_t n = c.rows();
  if (n == 0 || c.cols() != n) fail(ErrorCode::DimensionMismatch, "C must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (c(i, j) != c(j, i)) fail(ErrorCode::NotSymmetric, "C is not symmetric");
  if (h.cols() > 0 && h.rows() != n) fail(ErrorCode::DimensionMismatch, "H must have as many rows as C");
  if (X < 1) fail(ErrorCode::InvalidArgument, "X must be >= 1");
  const auto ci = integer_scaled(c);
  const auto hcols = integer_columns(h);

  std::vector<std::int64_t> values;
  std::vector<double> weights;
  if (weighted) {
    const VonMangoldtTable table(X);
    for (auto v : table.prime_powers()) {
      values.push_back(static_cast<std::int64_t>(v));
      weights.push_back(table.lambda(v));
    }
  } else {
    for (std::uint64_t v = 1; v <= X; ++v) values.push_back(static_cast<std::int64_t>(v));
  }
  check_budget(saturating_pow(values.size(), static_cast<unsigned>(n)), limits, "paired-system enumeration");

  PairedCount out;
  out.weighted = weighted;
  if (values.empty()) return out;

  std::unordered_map<std::vector<std::int64_t>, std::pair<std::uint64_t, double>, VectorHash> buckets;
  std::vector<std::int64_t> key(1 + hcols.size());
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    i128 q = 0;
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const i128 xi = values[idx[i]];
      if (weighted) w *= weights[idx[i]];
      for (std::size_t j = 0; j < n; ++j) q += i128(ci[i * n + j]) * xi * values[idx[j]];
    }
    key[0] = narrow(q, "x^T C x");
    for (std::size_t col = 0; col < hcols.size(); ++col) {
      i128 s = 0;
      for (std::size_t i = 0; i < n; ++i) s += i128(hcols[col][i]) * values[idx[i]];
      key[1 + col] = narrow(s, "x^T H");
    }
    auto& b = buckets[key];
    ++b.first;
    b.second += w;

    std::size_t pos = n;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < values.size()) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) break;
  }

  // fixed key order keeps the weighted sum reproducible
  std::vector<const std::pair<const std::vector<std::int64_t>, std::pair<std::uint64_t, double>>*> sorted;
  sorted.reserve(buckets.size());
  for (const auto& b : buckets) sorted.push_back(&b);
  std::sort(sorted.begin(), sorted.end(), [](const auto* l, const auto* r) { return l->first < r->first; });
  for (const auto* b : sorted) {
    out.unit += b->second.first * b->second.first;
    out.value += weighted ? b->second.second * b->second.second : 0.0;
  }
  if (!weighted) out.value = static_cast<double>(out.unit);
  return out;
}

InjectionReport verify_sum_difference_injection(const RationalMatrix& c, const RationalMatrix& h, std::uint64_t X,
                                                const Limits& limits) {
  InjectionReport report;
  report.lhs = count_paired_system(c, h, X, false, limits).unit;
  BilinearSystem sys{c, h, Box::Symmetric};
  report.rhs = count_bilinear(sys, 2 * X, limits);
  report.holds = report.lhs <= report.rhs;
  return report;
}

// ---------------------------------------------------------------------------

GrowthFit growth_exponent_fit(const std::vector<std::pair<double, double>>& samples, double predicted) {
  if (samples.size() < 3) fail(ErrorCode::DegenerateSamples, "growth fit needs at least 3 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].first <= 0 || samples[i].second <= 0) {
      fail(ErrorCode::DegenerateSamples, "growth fit needs positive X and counts");
    }
    if (i > 0 && samples[i].first <= samples[i - 1].first) {
      fail(ErrorCode::DegenerateSamples, "sample X values must be strictly increasing");
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(samples.size());
  for (const auto& [x, y] : samples) {
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  GrowthFit fit;
  fit.samples = samples;
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  fit.predicted_exponent = predicted;
  fit.deviation = std::abs(fit.slope - predicted);
  return fit;
}

}  // namespace qfp
