#include "qfp/generators.hpp"

#include "qfp/error.hpp"
#include "qfp/linalg.hpp"
#include "qfp/offdiag.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

namespace qfp {

namespace {

constexpr std::size_t kMaxAttempts = 2000;

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

long nonzero(std::mt19937_64& rng, long bound) {
  long v = 0;
  while (v == 0) v = uniform(rng, -bound, bound);
  return v;
}

IntegerMatrix random_block(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

IntegerMatrix random_symmetric_2x2(std::mt19937_64& rng, long bound, bool diagonal_only) {
  IntegerMatrix m(2, 2);
  m(0, 0) = uniform(rng, -bound, bound);
  m(1, 1) = uniform(rng, -bound, bound);
  if (!diagonal_only) m(0, 1) = m(1, 0) = uniform(rng, -bound, bound);
  return m;
}

Integer det2(const IntegerMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

std::size_t nonzero_count(const std::vector<Integer>& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Integer& z) { return z != 0; }));
}

bool accept(const SymmetricIntMatrix& a, FormKind kind) {
  const auto r = offdiag_rank(a).value;
  if (kind == FormKind::Rank1) return r == 1;
  if (r != 2) return false;
  const auto tag = classify_rank2(a);
  switch (kind) {
    case FormKind::Case11: return tag.kind == Rank2Case::Case11;
    case FormKind::Case21: return tag.kind == Rank2Case::Case21;
    case FormKind::Case22: return tag.kind == Rank2Case::Case22;
    default: return false;
  }
}

const std::array<Rational, 8>& h_choices() {
  static const std::array<Rational, 8> values{Rational(0),    Rational(0),     Rational(1),
                                              Rational(-1),   Rational(1, 2),  Rational(-1, 2),
                                              Rational(2),    Rational(1, 3)};
  return values;
}

Rank1Form draw_rank1(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Rank1Form f;
    f.a = uniform(rng, -5, 5);
    f.xi.resize(n - 1);
    f.xi[0] = nonzero(rng, 3);
    for (std::size_t k = 1; k + 1 < n; ++k) f.xi[k] = uniform(rng, -3, 3);
    f.h = h_choices()[static_cast<std::size_t>(uniform(rng, 0, 7))];
    if (nonzero_count(f.xi) < 2) f.h = 0;
    bool integral = true;
    for (std::size_t k = 0; k + 1 < n && integral; ++k)
      for (std::size_t l = k + 1; l + 1 < n; ++l)
        if (!is_integral(f.h * f.xi[k] * f.xi[l])) {
          integral = false;
          break;
        }
    if (!integral) continue;
    // diagonal entries of the trailing block are integers; d absorbs h xi_k^2
    f.d.resize(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) f.d[k] = Rational(uniform(rng, -5, 5)) - f.h * f.xi[k] * f.xi[k];
    return f;
  }
}

Rank2Form11 draw_case11(std::mt19937_64& rng, std::size_t n) {
  Rank2Form11 f;
  const bool zero_c = uniform(rng, 0, 3) == 0;
  f.a1 = random_symmetric_2x2(rng, 4, !zero_c);
  do {
    f.b = random_block(rng, 2, 2, 3);
  } while (det2(f.b) == 0);
  f.a2 = random_symmetric_2x2(rng, 4, false);
  f.c = zero_c ? IntegerMatrix(2, n - 4) : random_block(rng, 2, n - 4, 3);
  f.d.resize(n - 4);
  for (auto& v : f.d) v = uniform(rng, -5, 5);
  return f;
}

// Off-diagonal part of V M V^T, V with rows v_0..v_{n-1} in Z^2.
struct GramDraw {
  std::vector<std::array<Integer, 2>> v;
  IntegerMatrix m;
  std::vector<Integer> diag;

  Integer inner(std::size_t i, std::size_t j) const {
    return v[i][0] * (m(0, 0) * v[j][0] + m(0, 1) * v[j][1]) + v[i][1] * (m(1, 0) * v[j][0] + m(1, 1) * v[j][1]);
  }

  SymmetricIntMatrix matrix() const {
    const std::size_t n = v.size();
    std::vector<Integer> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e[i * n + j] = i == j ? diag[i] : inner(i, j);
    return SymmetricIntMatrix(n, std::move(e));
  }
};

bool independent(const std::array<Integer, 2>& x, const std::array<Integer, 2>& y) {
  return x[0] * y[1] - x[1] * y[0] != 0;
}

GramDraw draw_gram(std::mt19937_64& rng, std::size_t n, bool case21, std::vector<Integer>& xi) {
  GramDraw g;
  g.v.resize(n);
  do {
    g.m = random_symmetric_2x2(rng, 2, false);
  } while (det2(g.m) == 0);
  auto vec = [&] { return std::array<Integer, 2>{Integer(uniform(rng, -3, 3)), Integer(uniform(rng, -3, 3))}; };
  do {
    g.v[0] = vec();
    g.v[1] = vec();
  } while (!independent(g.v[0], g.v[1]));
  do {
    g.v[2] = vec();
    g.v[3] = vec();
  } while (!independent(g.v[2], g.v[3]));
  if (case21) {
    xi.assign(n - 3, 0);
    xi[0] = 1;
    for (std::size_t j = 4; j < n; ++j) {
      xi[j - 3] = uniform(rng, -2, 2);
      g.v[j] = {xi[j - 3] * g.v[3][0], xi[j - 3] * g.v[3][1]};
    }
  } else {
    for (std::size_t j = 4; j < n; ++j) g.v[j] = vec();
  }
  g.diag.resize(n);
  for (auto& d : g.diag) d = uniform(rng, -5, 5);
  return g;
}

Rank2Form21 form_case21(const GramDraw& g, const std::vector<Integer>& xi) {
  const std::size_t n = g.v.size();
  Rank2Form21 f;
  f.a1 = IntegerMatrix(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) f.a1(i, j) = i == j ? g.diag[i] : g.inner(i, j);
  f.gamma1 = {g.inner(0, 2), g.inner(1, 2)};
  f.gamma2 = {Rational(g.inner(0, 3)), Rational(g.inner(1, 3))};
  f.xi = xi;
  f.a = g.diag[2];
  const Integer v23 = g.inner(2, 3);
  f.v.resize(n - 3);
  for (std::size_t k = 0; k < n - 3; ++k) f.v[k] = v23 * xi[k];
  f.h = nonzero_count(xi) >= 2 ? Rational(g.inner(3, 3)) : Rational(0);
  f.d.resize(n - 3);
  for (std::size_t k = 0; k < n - 3; ++k) f.d[k] = Rational(g.diag[3 + k]) - f.h * xi[k] * xi[k];
  return f;
}

Rank2Form22 form_case22(const GramDraw& g) {
  const std::size_t n = g.v.size();
  const std::size_t len = n - 2;
  RationalMatrix w{{Rational(g.v[2][0]), Rational(g.v[3][0])}, {Rational(g.v[2][1]), Rational(g.v[3][1])}};
  const Rational det = determinant(w);
  RationalMatrix w_inv{{w(1, 1) / det, -w(0, 1) / det}, {-w(1, 0) / det, w(0, 0) / det}};
  RationalMatrix cols(2, len);
  for (std::size_t k = 0; k < len; ++k) {
    cols(0, k) = Rational(g.v[2 + k][0]);
    cols(1, k) = Rational(g.v[2 + k][1]);
  }
  const RationalMatrix raw = w_inv * cols;
  const Integer lambda = lcm_of_denominators(raw.entries());
  const Rational lam(lambda);

  Rank2Form22 f;
  f.a1 = IntegerMatrix(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) f.a1(i, j) = i == j ? g.diag[i] : g.inner(i, j);
  f.c = IntegerMatrix(2, len);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < len; ++k) f.c(i, k) = Rational(raw(i, k) * lam).get_num();
  f.gamma = RationalMatrix(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) f.gamma(i, j) = Rational(g.inner(i, 2 + j)) / lam;
  const RationalMatrix m = g.m.to_rational();
  f.h = w.transpose() * m * w;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) f.h(i, j) /= lam * lam;
  const RationalMatrix cr = f.c.to_rational();
  const RationalMatrix cthc = cr.transpose() * f.h * cr;
  f.d.resize(len);
  for (std::size_t k = 0; k < len; ++k) f.d[k] = Rational(g.diag[2 + k]) - cthc(k, k);
  return f;
}

template <typename Form>
void set_perm(Form& f, const IndexPermutation& p) {
  f.perm = p;
}

}  // namespace

std::string_view to_string(FormKind k) {
  switch (k) {
    case FormKind::Rank1: return "rank1";
    case FormKind::Case11: return "case11";
    case FormKind::Case21: return "case21";
    case FormKind::Case22: return "case22";
  }
  return "?";
}

SymmetricIntMatrix random_symmetric(std::size_t n, long lo, long hi, std::mt19937_64& rng) {
  std::vector<Integer> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) e[i * n + j] = e[j * n + i] = uniform(rng, lo, hi);
  return SymmetricIntMatrix(n, std::move(e));
}

IndexPermutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), 0);
  std::shuffle(image.begin(), image.end(), rng);
  return IndexPermutation(std::move(image));
}

SymmetricIntMatrix generate_from_form(const StructureForm& form) { return assemble(form); }

GeneratedInstance generate_instance(FormKind kind, std::size_t n, std::uint64_t seed, bool permute) {
  // with n = 4 the B1/B2 blocks have a single column, so only Case11 tags exist
  const std::size_t min_n = kind == FormKind::Rank1 ? 2 : (kind == FormKind::Case11 ? 4 : 5);
  if (n < min_n) {
    fail(ErrorCode::InvalidArgument, std::string(to_string(kind)) + " needs n >= " + std::to_string(min_n));
  }
  std::mt19937_64 rng(seed);
  GeneratedInstance out;
  out.kind = kind;
  for (std::size_t attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    const IndexPermutation perm = permute ? random_permutation(n, rng) : IndexPermutation::identity(n);
    StructureForm form;
    switch (kind) {
      case FormKind::Rank1: form = draw_rank1(rng, n); break;
      case FormKind::Case11: form = draw_case11(rng, n); break;
      case FormKind::Case21: {
        std::vector<Integer> xi;
        const GramDraw g = draw_gram(rng, n, true, xi);
        auto f = form_case21(g, xi);
        f.perm = IndexPermutation::identity(n);
        if (!(assemble(f) == g.matrix())) fail(ErrorCode::InternalInconsistency, "case21 parameters disagree");
        form = std::move(f);
        break;
      }
      case FormKind::Case22: {
        std::vector<Integer> unused;
        const GramDraw g = draw_gram(rng, n, false, unused);
        auto f = form_case22(g);
        f.perm = IndexPermutation::identity(n);
        if (!(assemble(f) == g.matrix())) fail(ErrorCode::InternalInconsistency, "case22 parameters disagree");
        form = std::move(f);
        break;
      }
    }
    std::visit([&](auto& f) { set_perm(f, perm); }, form);
    SymmetricIntMatrix a;
    try {
      a = assemble(form);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NonIntegralAssembly) continue;
      throw;
    }
    if (!accept(a, kind)) continue;
    out.form = std::move(form);
    out.matrix = std::move(a);
    out.attempts = attempt;
    return out;
  }
  fail(ErrorCode::InternalInconsistency,
       "generator for " + std::string(to_string(kind)) + " exhausted its attempts at n = " + std::to_string(n));
}

}  // namespace qfp
