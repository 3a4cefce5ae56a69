#include "qfp/arcs.hpp"

#include "qfp/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_map>

namespace qfp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex expi(double turns) {
  const double angle = kTwoPi * turns;
  return {std::cos(angle), std::sin(angle)};
}

SymmetricIntMatrix principal_submatrix(const SymmetricIntMatrix& a, const std::vector<std::size_t>& idx) {
  const std::size_t k = idx.size();
  std::vector<Integer> e(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) e[i * k + j] = a(idx[i], idx[j]);
  return SymmetricIntMatrix(k, std::move(e));
}

RepresentationHistogram from_map(const std::unordered_map<std::int64_t, double>& acc) {
  RepresentationHistogram h;
  std::vector<std::pair<std::int64_t, double>> items(acc.begin(), acc.end());
  std::sort(items.begin(), items.end());
  for (const auto& [m, r] : items) {
    h.m.push_back(m);
    h.r.push_back(r);
  }
  if (!h.m.empty()) {
    h.m_min = h.m.front();
    h.m_max = h.m.back();
  }
  return h;
}

}  // namespace

double RepresentationHistogram::at(std::int64_t value) const {
  const auto it = std::lower_bound(m.begin(), m.end(), value);
  if (it == m.end() || *it != value) return 0.0;
  return r[static_cast<std::size_t>(it - m.begin())];
}

double RepresentationHistogram::total_mass() const {
  double s = 0.0;
  for (double v : r) s += v;
  return s;
}

RepresentationHistogram representation_histogram(const SymmetricIntMatrix& a, std::uint64_t X, Weights weights,
                                                 const Limits& limits) {
  if (X < 2) fail(ErrorCode::InvalidArgument, "histogram needs X >= 2");
  const std::size_t n = a.n();
  const auto c = a.to_int64();
  const VonMangoldtTable table(X);
  const auto& pp = table.prime_powers();
  const std::uint64_t work = saturating_pow(pp.size(), static_cast<unsigned>(n));
  if (work > limits.budget) {
    fail(ErrorCode::BudgetExceeded, "histogram needs " + std::to_string(pp.size()) + "^" + std::to_string(n) +
                                        " tuples, budget is " + std::to_string(limits.budget));
  }
  std::vector<double> lam(pp.size());
  for (std::size_t i = 0; i < pp.size(); ++i) lam[i] = weights == Weights::Lambda ? table.lambda(pp[i]) : 1.0;

  auto run = [&](std::size_t first) {
    std::unordered_map<std::int64_t, double> acc;
    std::vector<std::int64_t> x(n);
    auto rec = [&](auto&& self, std::size_t d, std::int64_t quad, double w) -> void {
      if (d == n) {
        acc[quad] += w;
        return;
      }
      std::int64_t cross = 0;
      for (std::size_t j = 0; j < d; ++j) cross += c[d * n + j] * x[j];
      const std::size_t lo = d == 0 ? first : 0;
      const std::size_t hi = d == 0 ? first + 1 : pp.size();
      for (std::size_t i = lo; i < hi; ++i) {
        const auto v = static_cast<std::int64_t>(pp[i]);
        x[d] = v;
        self(self, d + 1, quad + c[d * n + d] * v * v + 2 * cross * v, w * lam[i]);
      }
    };
    rec(rec, 0, 0, 1.0);
    std::vector<std::pair<std::int64_t, double>> items(acc.begin(), acc.end());
    std::sort(items.begin(), items.end());
    return items;
  };
  const auto parts = parallel_map(pp.size(), limits.threads, run);
  std::unordered_map<std::int64_t, double> total;
  for (const auto& part : parts)
    for (const auto& [m, r] : part) total[m] += r;
  auto h = from_map(total);
  h.X = X;
  h.n = n;
  h.weights = weights;
  return h;
}

std::optional<std::vector<std::size_t>> find_block_split(const SymmetricIntMatrix& a) {
  const std::size_t n = a.n();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j] && a(i, j) != 0) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < n; ++i)
    if (seen[i]) first.push_back(i);
  if (first.size() == n) return std::nullopt;
  return first;
}

RepresentationHistogram representation_histogram_split(const SymmetricIntMatrix& a,
                                                       const std::vector<std::size_t>& first, std::uint64_t X,
                                                       Weights weights, const Limits& limits) {
  const std::size_t n = a.n();
  std::vector<bool> in_first(n, false);
  for (auto i : first) {
    if (i >= n || in_first[i]) fail(ErrorCode::InvalidArgument, "split indices must be distinct and < n");
    in_first[i] = true;
  }
  std::vector<std::size_t> lhs, rhs;
  for (std::size_t i = 0; i < n; ++i) (in_first[i] ? lhs : rhs).push_back(i);
  if (lhs.empty() || rhs.empty()) fail(ErrorCode::SplitUnavailable, "split must leave both halves non-empty");
  for (auto i : lhs)
    for (auto j : rhs)
      if (a(i, j) != 0) {
        fail(ErrorCode::SplitUnavailable,
             "cross term a(" + std::to_string(i) + ", " + std::to_string(j) + ") links the two halves");
      }
  const auto h1 = representation_histogram(principal_submatrix(a, lhs), X, weights, limits);
  const auto h2 = representation_histogram(principal_submatrix(a, rhs), X, weights, limits);
  std::unordered_map<std::int64_t, double> joined;
  joined.reserve(h1.m.size() * 4);
  for (std::size_t i = 0; i < h1.m.size(); ++i)
    for (std::size_t j = 0; j < h2.m.size(); ++j) joined[h1.m[i] + h2.m[j]] += h1.r[i] * h2.r[j];
  auto h = from_map(joined);
  h.X = X;
  h.n = n;
  h.weights = weights;
  return h;
}

Complex s_alpha(const RepresentationHistogram& hist, double alpha) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < hist.m.size(); ++i) {
    // reduce alpha * m mod 1 before the exponential
    const double turns = std::fmod(alpha * static_cast<double>(hist.m[i]), 1.0);
    s += hist.r[i] * expi(turns);
  }
  return s;
}

// ---------------------------------------------------------------------------

Rational ArcFamily::measure() const {
  Rational total = 0;
  for (const auto& arc : arcs) total += 2 * arc.halfwidth;
  return total;
}

ArcFamily build_arcs(std::uint64_t X, double K) {
  if (X < 2) fail(ErrorCode::InvalidArgument, "arcs need X >= 2");
  if (K < 0) fail(ErrorCode::InvalidArgument, "K must be >= 0");
  ArcFamily family;
  family.X = X;
  family.K = K;
  family.P = std::pow(std::log(static_cast<double>(X)), K);
  if (family.P > static_cast<double>(X) / 2.0) {
    fail(ErrorCode::PTooLarge, "P = " + std::to_string(family.P) + " exceeds X/2 = " + std::to_string(X / 2.0));
  }
  const Rational p_exact(family.P);
  const Rational x2(Integer(static_cast<unsigned long>(X)) * Integer(static_cast<unsigned long>(X)));
  const auto q_max = static_cast<std::uint64_t>(std::floor(family.P + 1e-9));
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    const Rational w = p_exact / (Rational(static_cast<unsigned long>(q)) * x2);
    for (std::uint64_t a = 1; a <= q; ++a)
      if (std::gcd(a, q) == 1) family.arcs.push_back({a, q, w});
  }
  std::sort(family.arcs.begin(), family.arcs.end(),
            [](const Arc& l, const Arc& r) { return l.a * r.q < r.a * l.q; });
  if (!arcs_disjoint(family)) fail(ErrorCode::InternalInconsistency, "major arcs overlap although P <= X/2");
  return family;
}

ArcFamily full_cover_arcs(std::uint64_t X) {
  if (X < 2) fail(ErrorCode::InvalidArgument, "arcs need X >= 2");
  ArcFamily family;
  family.X = X;
  family.full_cover = true;
  family.arcs.push_back({X + 2, 2 * X, Rational(1, 2)});
  return family;
}

bool arcs_disjoint(const ArcFamily& family) {
  const auto& arcs = family.arcs;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Rational ci = arcs[i].center();
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      const Rational gap = abs(Rational(ci - arcs[j].center()));
      if (gap <= arcs[i].halfwidth + arcs[j].halfwidth) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

MajorArcReport major_arc_integral(const RepresentationHistogram& hist, std::int64_t t, const ArcFamily& family) {
  if (hist.X != family.X) fail(ErrorCode::InvalidArgument, "histogram and arc family use different X");
  const std::size_t count = hist.m.size();
  std::vector<std::int64_t> k(count);
  for (std::size_t i = 0; i < count; ++i) k[i] = hist.m[i] - t;
  const double r_t = hist.at(t);

  MajorArcReport report;
  report.t = t;
  report.I_total = r_t;

  // Antiderivative F(x) = sum_{k != 0} r e(kx) / (2 pi i k) evaluated at arc
  // endpoints through per-modulus buckets on k mod q.
  const std::size_t arcs_n = family.arcs.size();
  std::vector<Complex> integral(arcs_n), f_left(arcs_n), f_right(arcs_n);
  std::map<std::uint64_t, std::vector<std::size_t>> by_q;
  for (std::size_t i = 0; i < arcs_n; ++i) by_q[family.arcs[i].q].push_back(i);

  for (const auto& [q, members] : by_q) {
    const Rational& w_exact = family.arcs[members.front()].halfwidth;
    for (auto i : members)
      if (family.arcs[i].halfwidth != w_exact) fail(ErrorCode::InternalInconsistency, "mixed halfwidths at one q");
    const double w = w_exact.get_d();
    const auto qi = static_cast<std::int64_t>(q);
    std::vector<double> sin_bucket(q, 0.0);
    std::vector<Complex> plus(q, 0.0), minus(q, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      if (k[i] == 0) continue;
      const double kd = static_cast<double>(k[i]);
      const auto j = static_cast<std::size_t>(((k[i] % qi) + qi) % qi);
      const double kw = std::fmod(kd * w, 1.0);
      sin_bucket[j] += hist.r[i] * std::sin(kTwoPi * kw) / (std::numbers::pi * kd);
      const Complex scale = hist.r[i] / Complex(0.0, kTwoPi * kd);
      const Complex e = expi(kw);
      plus[j] += scale * e;
      minus[j] += scale * std::conj(e);
    }
    const auto tab = unit_roots(q);
    for (auto idx : members) {
      const std::uint64_t a = family.arcs[idx].a % q;
      Complex s = 2.0 * w * r_t, fl = 0.0, fr = 0.0;
      for (std::uint64_t j = 0; j < q; ++j) {
        const Complex phase = tab[j * a % q];
        s += sin_bucket[j] * phase;
        fr += plus[j] * phase;
        fl += minus[j] * phase;
      }
      integral[idx] = s;
      f_left[idx] = fl;
      f_right[idx] = fr;
    }
    PerModulusContribution contrib;
    contrib.q = q;
    contrib.arcs = members.size();
    for (auto idx : members) contrib.integral += integral[idx];
    report.per_q.push_back(contrib);
  }
  for (std::size_t i = 0; i < arcs_n; ++i) report.I_major += integral[i];

  // F at 1/X, which equals F at 1 + 1/X since every k is an integer
  const std::uint64_t X = family.X;
  const auto tab_x = unit_roots(X);
  const auto xi = static_cast<std::int64_t>(X);
  Complex f_start = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    if (k[i] == 0) continue;
    const auto j = static_cast<std::size_t>(((k[i] % xi) + xi) % xi);
    f_start += hist.r[i] / Complex(0.0, kTwoPi * static_cast<double>(k[i])) * tab_x[j];
  }

  const Rational lo(Integer(1), Integer(static_cast<unsigned long>(X)));
  const Rational hi = lo + 1;
  Rational cursor = lo;
  Rational gap_measure = 0;
  Complex f_cursor = f_start;
  Complex minor = 0.0;
  for (std::size_t i = 0; i < arcs_n; ++i) {
    const Rational c = family.arcs[i].center();
    const Rational left = c - family.arcs[i].halfwidth;
    const Rational len = left - cursor;
    if (len < 0) fail(ErrorCode::InternalInconsistency, "arc family is not disjoint inside [1/X, 1 + 1/X]");
    gap_measure += len;
    minor += f_left[i] - f_cursor;
    cursor = c + family.arcs[i].halfwidth;
    f_cursor = f_right[i];
  }
  const Rational tail = hi - cursor;
  if (tail < 0) fail(ErrorCode::InternalInconsistency, "arc family extends beyond 1 + 1/X");
  gap_measure += tail;
  minor += f_start - f_cursor;
  report.gap_measure = gap_measure.get_d();
  minor += r_t * report.gap_measure;
  report.I_minor = minor;

  report.residual = std::abs(report.I_major + report.I_minor - r_t);
  if (r_t > 0) report.major_share = report.I_major.real() / r_t;
  return report;
}

double predicted_main_term(const SingularSeriesReport& series, std::uint64_t X, std::size_t n) {
  return series.partial_sum.real() * std::pow(static_cast<double>(X), static_cast<double>(n) - 2.0);
}

// ---------------------------------------------------------------------------

Complex weyl_probe(const Rational& d, double beta, const VonMangoldtTable& table, double alpha) {
  const double dd = d.get_d();
  Complex s = 0.0;
  for (auto x : table.prime_powers()) {
    const double xd = static_cast<double>(x);
    const double turns = std::fmod(alpha * dd * xd * xd, 1.0) + std::fmod(beta * xd, 1.0);
    s += table.lambda(x) * expi(turns);
  }
  return s;
}

Complex weyl_probe(const Rational& d, double beta, std::uint64_t X, double alpha) {
  if (X < 2) fail(ErrorCode::InvalidArgument, "weyl_probe needs X >= 2");
  return weyl_probe(d, beta, VonMangoldtTable(X), alpha);
}

MinorArcScan minor_arc_scan(const Rational& d, const ArcFamily& family, std::size_t grid, const Limits& limits) {
  if (grid < 10) fail(ErrorCode::InvalidArgument, "grid_size must be >= 10");
  if (d == 0) fail(ErrorCode::InvalidArgument, "d must be nonzero");
  const VonMangoldtTable table(family.X);
  MinorArcScan scan;
  scan.X = family.X;
  scan.grid = grid;
  scan.psi = table.psi();

  std::vector<double> centers, widths;
  for (const auto& arc : family.arcs) {
    centers.push_back(static_cast<double>(arc.a) / static_cast<double>(arc.q));
    widths.push_back(arc.halfwidth.get_d());
  }
  auto on_major = [&](double alpha) {
    if (family.full_cover) return true;
    const auto it = std::lower_bound(centers.begin(), centers.end(), alpha);
    const auto i = static_cast<std::size_t>(it - centers.begin());
    if (i < centers.size() && std::abs(centers[i] - alpha) <= widths[i]) return true;
    if (i > 0 && std::abs(centers[i - 1] - alpha) <= widths[i - 1]) return true;
    return false;
  };
  std::vector<double> alphas;
  const double start = 1.0 / static_cast<double>(family.X);
  for (std::size_t i = 0; i < grid; ++i) {
    const double alpha = start + static_cast<double>(i) / static_cast<double>(grid);
    if (!on_major(alpha)) alphas.push_back(alpha);
  }
  scan.sampled = alphas.size();
  scan.empty = alphas.empty();
  const auto values = parallel_map(alphas.size(), limits.threads,
                                   [&](std::size_t i) { return std::abs(weyl_probe(d, 0.0, table, alphas[i])); });
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    scan.points.push_back({alphas[i], values[i]});
    if (values[i] > scan.sup_abs) {
      scan.sup_abs = values[i];
      scan.argmax_alpha = alphas[i];
    }
  }
  return scan;
}

}  // namespace qfp
