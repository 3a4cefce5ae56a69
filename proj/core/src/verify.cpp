#include "qfp/verify.hpp"

#include "qfp/arcs.hpp"
#include "qfp/counting.hpp"
#include "qfp/error.hpp"
#include "qfp/generators.hpp"
#include "qfp/linalg.hpp"
#include "qfp/offdiag.hpp"
#include "qfp/oracles.hpp"
#include "qfp/structure.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace qfp {

namespace {

constexpr std::size_t kMaxDetails = 12;

class Suite {
 public:
  Suite(std::string name, std::string module) {
    result_.name = std::move(name);
    result_.module = std::move(module);
  }

  // msg is only built on failure
  template <typename Msg>
  bool check(bool ok, Msg&& msg) {
    if (ok) {
      ++result_.passed;
    } else {
      ++result_.failed;
      if (failures_shown_ < kMaxDetails) {
        result_.details.push_back("FAIL " + std::string(msg()));
        ++failures_shown_;
      }
    }
    return ok;
  }

  void note(std::string line) { result_.details.push_back(std::move(line)); }

  // An unexpected exception counts as one failure.
  void guard(const std::string& what, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(false, [&] { return what + ": unexpected error: " + e.what(); });
    }
  }

  SuiteResult finish(std::chrono::steady_clock::time_point start) {
    result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(result_);
  }

 private:
  SuiteResult result_;
  std::size_t failures_shown_ = 0;
};

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }
bool close_rel(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string fmt(Complex v) { return "(" + fmt(v.real()) + ", " + fmt(v.imag()) + ")"; }

std::string matrix_text(const SymmetricIntMatrix& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.n(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < a.n(); ++j) s += (j ? " " : "") + to_string(a(i, j));
  }
  return s + "]";
}

long draw(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational random_rational(std::mt19937_64& rng) {
  return make_rational(Integer(draw(rng, -5, 5)), Integer(draw(rng, 1, 4)));
}

// Sparse symmetric draw: off-diagonal entries are zero with probability 0.7
// so low off-diagonal ranks show up.
SymmetricIntMatrix sparse_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::vector<Integer> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i * n + i] = draw(rng, -5, 5);
    for (std::size_t j = i + 1; j < n; ++j) {
      const long v = draw(rng, 0, 9) < 7 ? 0 : draw(rng, -5, 5);
      e[i * n + j] = v;
      e[j * n + i] = v;
    }
  }
  return SymmetricIntMatrix(n, std::move(e));
}

std::chrono::steady_clock::time_point now() { return std::chrono::steady_clock::now(); }

// --------------------------------------------------------------------------

SuiteResult linalg_properties(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("linalg-properties", "exact-linalg");
  std::mt19937_64 rng(opt.seed ^ 0x11);
  for (int trial = 0; trial < 100; ++trial) {
    s.guard("rank trial " + std::to_string(trial), [&] {
      const std::size_t r = draw(rng, 1, 6), c = draw(rng, 1, 6);
      RationalMatrix m(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = random_rational(rng);
      // force some dependence
      if (r >= 3 && trial % 2 == 0)
        for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * Rational(2, 3) - m(1, j);
      const std::size_t base = rank_rational(m);
      s.check(base == rank_rational(m.transpose()), [&] { return "rank(M) != rank(M^T)"; });
      s.check(base <= std::min(r, c), [&] { return "rank exceeds min(r, c)"; });

      std::vector<std::size_t> rp(r), cp(c);
      std::iota(rp.begin(), rp.end(), 0);
      std::iota(cp.begin(), cp.end(), 0);
      std::shuffle(rp.begin(), rp.end(), rng);
      std::shuffle(cp.begin(), cp.end(), rng);
      s.check(rank_rational(m.submatrix(rp, cp)) == base, [&] { return "rank not permutation invariant"; });

      RationalMatrix scaled = m;
      const std::size_t row = draw(rng, 0, static_cast<long>(r) - 1);
      Rational k = random_rational(rng);
      if (k == 0) k = Rational(-7, 3);
      for (std::size_t j = 0; j < c; ++j) scaled(row, j) *= k;
      s.check(rank_rational(scaled) == base, [&] { return "rank changed under nonzero row scaling"; });

      std::vector<Integer> ints(r * c);
      for (auto& v : ints) v = draw(rng, -3, 3);
      RationalMatrix as_q(r, c);
      for (std::size_t i = 0; i < r * c; ++i) as_q(i / c, i % c) = Rational(ints[i]);
      s.check(rank_integer(ints, r, c) == rank_rational(as_q), [&] { return "Bareiss rank != rational rank"; });
    });
  }
  for (int trial = 0; trial < 60; ++trial) {
    s.guard("solve trial " + std::to_string(trial), [&] {
      const std::size_t n = draw(rng, 1, 5);
      RationalMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = draw(rng, -3, 3);
      std::vector<Rational> b(n);
      for (auto& v : b) v = random_rational(rng);
      const Rational det = determinant(m);
      const auto x = solve_square(m, b);
      s.check(x.has_value() == (det != 0), [&] { return "solve_square solvability disagrees with det"; });
      if (x) s.check(m.multiply(*x) == b, [&] { return "M x != b"; });
      s.check((rank_rational(m) == n) == (det != 0), [&] { return "full rank disagrees with det"; });
    });
  }
  for (int trial = 0; trial < 60; ++trial) {
    s.guard("conjugation trial " + std::to_string(trial), [&] {
      const std::size_t n = draw(rng, 1, 7);
      const auto a = random_symmetric(n, -5, 5, rng);
      const auto p = random_permutation(n, rng);
      const auto b = conjugate_by_permutation(a, p);
      s.check(conjugate_by_permutation(b, p.inverse()) == a, [&] { return "conjugation not inverted"; });
      s.check(rank(b) == rank(a), [&] { return "rank changed under conjugation"; });
      for (std::size_t i = 0; i < n; ++i)
        s.check(b(i, i) == a(p[i], p[i]), [&] { return "diagonal not carried along"; });
    });
  }
  return s.finish(start);
}

// --------------------------------------------------------------------------

bool witness_ok(const SymmetricIntMatrix& a, const OffDiagReport& r) {
  for (auto i : r.witness_rows)
    if (std::find(r.witness_cols.begin(), r.witness_cols.end(), i) != r.witness_cols.end()) return false;
  if (r.value == 0) return true;
  return rank_of_submatrix(a, r.witness_rows, r.witness_cols) == r.value;
}

SuiteResult offdiag_equivalence(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("offdiag-oracle-equivalence", "offdiag-rank");
  std::mt19937_64 rng(opt.seed ^ 0x22);
  std::size_t histogram[5] = {0, 0, 0, 0, 0};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = draw(rng, 2, 8);
    const auto a = trial % 2 ? random_symmetric(n, -5, 5, rng) : sparse_symmetric(n, rng);
    s.guard("matrix " + matrix_text(a), [&] {
      const auto fast = offdiag_rank(a);
      const auto slow = offdiag_rank_oracle(a);
      ++histogram[std::min<std::size_t>(fast.value, 4)];
      s.check(fast.value == slow.value, [&] {
        return "rank_off mismatch on " + matrix_text(a) + ": fast " + std::to_string(fast.value) + ", oracle " +
               std::to_string(slow.value);
      });
      s.check(witness_ok(a, fast), [&] { return "bad fast witness on " + matrix_text(a); });
      s.check(witness_ok(a, slow), [&] { return "bad oracle witness on " + matrix_text(a); });
      s.check(fast.value <= n / 2, [&] { return "rank_off above floor(n/2)"; });
      const auto p = random_permutation(n, rng);
      s.check(offdiag_rank(conjugate_by_permutation(a, p)).value == fast.value,
              [&] { return "rank_off not conjugation invariant on " + matrix_text(a); });
    });
  }
  s.note("rank_off distribution 0..4+: " + std::to_string(histogram[0]) + " " + std::to_string(histogram[1]) + " " +
         std::to_string(histogram[2]) + " " + std::to_string(histogram[3]) + " " + std::to_string(histogram[4]));
  return s.finish(start);
}

// --------------------------------------------------------------------------

SuiteResult structure_round_trip(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("structure-round-trip", "structure-decomp");
  const FormKind kinds[] = {FormKind::Rank1, FormKind::Case11, FormKind::Case21, FormKind::Case22};
  std::mt19937_64 rng(opt.seed ^ 0x33);
  for (const FormKind kind : kinds) {
    const std::size_t n_min = kind == FormKind::Rank1 ? 2 : (kind == FormKind::Case11 ? 4 : 5);
    for (int i = 0; i < 500; ++i) {
      const std::size_t n = n_min + static_cast<std::size_t>(i) % (10 - n_min);
      const std::uint64_t seed = opt.seed * 1000003ULL + static_cast<std::uint64_t>(kind) * 10007ULL + i;
      const bool permute = i % 5 != 0;
      s.guard(std::string(to_string(kind)) + " seed " + std::to_string(seed), [&] {
        const auto inst = generate_instance(kind, n, seed, permute);
        const auto form = decompose(inst.matrix);
        s.check(form.index() == static_cast<std::size_t>(kind), [&] {
          return std::string(to_string(kind)) + " instance tagged as variant " + std::to_string(form.index()) +
                 ": " + matrix_text(inst.matrix);
        });
        s.check(assemble(form) == inst.matrix, [&] {
          return std::string(to_string(kind)) + " reconstruction differs: " + matrix_text(inst.matrix);
        });
        const auto perm = std::visit([](const auto& f) { return f.perm; }, form);
        s.check(block_form(form) == conjugate_by_permutation(inst.matrix, perm).to_rational(),
                [&] { return "P^T A P != block form"; });
        if (!permute) {
          bool comparable = true;
          if (const auto* f22 = std::get_if<Rank2Form22>(&form)) comparable = !f22->h_underdetermined;
          if (comparable)
            s.check(block_form(form) == block_form(inst.form),
                    [&] { return std::string(to_string(kind)) + " parameters differ from the generator"; });
        }
        if (const auto* f1 = std::get_if<Rank1Form>(&form)) {
          // trailing off-diagonal entries are h xi_k xi_l
          const auto b = conjugate_by_permutation(inst.matrix, f1->perm);
          bool ok = true;
          for (std::size_t k = 0; k + 1 < n; ++k)
            for (std::size_t l = 0; l + 1 < n; ++l)
              if (k != l && Rational(b(k + 1, l + 1)) != f1->h * f1->xi[k] * f1->xi[l]) ok = false;
          s.check(ok, [&] { return "rank-1 trailing block is not h xi xi^T off the diagonal"; });
        }
        if (i % 7 == 0) {
          const auto p = random_permutation(n, rng);
          const auto moved = decompose(conjugate_by_permutation(inst.matrix, p));
          s.check(moved.index() == form.index(), [&] { return "tag not conjugation invariant"; });
        }
        if (i % 25 == 0 && n <= 7) {
          const auto slow = offdiag_rank_oracle(inst.matrix).value;
          s.check(slow == (kind == FormKind::Rank1 ? 1u : 2u), [&] { return "oracle rank_off disagrees"; });
        }
      });
    }
  }
  return s.finish(start);
}

// --------------------------------------------------------------------------

template <typename Form, typename Find>
void expect_no_quintuple(Suite& s, const Form& f, Find find, const std::string& label) {
  const std::size_t r = rank(assemble(f));
  try {
    (void)find(f, r);
    s.check(false, [&] { return label + ": quintuple returned for rank " + std::to_string(r); });
  } catch (const Error& e) {
    s.check(e.code() == ErrorCode::NoQuintuple,
            [&] { return label + ": expected NoQuintuple, got " + std::string(to_string(e.code())); });
  }
}

std::vector<std::size_t> support_of_three(std::size_t len, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(len);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(3);
  return idx;
}

SuiteResult quintuple_validity(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("quintuple-validity", "structure-decomp");
  std::mt19937_64 rng(opt.seed ^ 0x44);
  std::size_t positives = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 7 + static_cast<std::size_t>(i) % 4;
    const std::uint64_t seed = opt.seed * 7919ULL + 500000ULL + i;
    s.guard("rank-1 seed " + std::to_string(seed), [&] {
      const auto inst = generate_instance(FormKind::Rank1, n, seed);
      const auto f = std::get<Rank1Form>(decompose(inst.matrix));
      const std::size_t r = rank(inst.matrix);
      if (r < 6) return;
      ++positives;
      const auto q = find_quintuple_rank1(f, r);
      s.check(quintuple_holds(q, f), [&] { return "rank-1 quintuple fails its condition"; });
      // independent product check
      Rational prod = Rational(f.xi[q.b[0]]);
      for (int k = 1; k < 5; ++k) prod *= f.d[q.b[k]];
      std::array<std::size_t, 5> sorted = q.b;
      std::sort(sorted.begin(), sorted.end());
      s.check(prod != 0 && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
              [&] { return "rank-1 quintuple product vanishes or repeats an index"; });
      if (i % 10 == 0) s.check(oracle::rank1_quintuple_exists(f), [&] { return "oracle finds no quintuple"; });
    });
  }
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 8 + static_cast<std::size_t>(i) % 4;
    const std::uint64_t seed = opt.seed * 7919ULL + 700000ULL + i;
    s.guard("case-22 seed " + std::to_string(seed), [&] {
      const auto inst = generate_instance(FormKind::Case22, n, seed);
      const auto f = std::get<Rank2Form22>(decompose(inst.matrix));
      const std::size_t r = rank(inst.matrix);
      if (r < 8) return;
      ++positives;
      const auto q = find_quintuple_case22(f, r);
      s.check(quintuple_holds(q, f), [&] { return "case-22 quintuple fails its condition"; });
      std::vector<Integer> cols{f.c(0, q.b[0]), f.c(0, q.b[1]), f.c(1, q.b[0]), f.c(1, q.b[1])};
      const Rational prod = f.d[q.b[2]] * f.d[q.b[3]] * f.d[q.b[4]];
      s.check(rank_integer(cols, 2, 2) == 2 && prod != 0,
              [&] { return "case-22 quintuple: independent rank/product check fails"; });
      if (i % 10 == 0) s.check(oracle::case22_quintuple_exists(f), [&] { return "oracle finds no quintuple"; });
    });
  }
  s.note("positive instances checked: " + std::to_string(positives));

  // negative controls: at most three nonzero diagonal entries keep rank(A) small
  for (int i = 0; i < 20; ++i) {
    s.guard("rank-1 negative " + std::to_string(i), [&] {
      const std::size_t n = 7 + static_cast<std::size_t>(i) % 4;
      Rank1Form f;
      f.perm = IndexPermutation::identity(n);
      f.a = draw(rng, -5, 5);
      f.xi.assign(n - 1, 0);
      for (auto& x : f.xi) x = draw(rng, -3, 3);
      f.xi[0] = draw(rng, 1, 3);
      f.h = 0;
      f.d.assign(n - 1, 0);
      for (const auto k : support_of_three(n - 1, rng)) f.d[k] = draw(rng, 1, 5);
      expect_no_quintuple(s, f, find_quintuple_rank1, "rank-1 negative control");
      s.check(!oracle::rank1_quintuple_exists(f), [&] { return "oracle finds a quintuple in a negative control"; });
    });
  }
  for (int i = 0; i < 20; ++i) {
    s.guard("case-22 negative " + std::to_string(i), [&] {
      const std::size_t n = 9 + static_cast<std::size_t>(i) % 3;
      Rank2Form22 f;
      f.perm = IndexPermutation::identity(n);
      f.a1 = IntegerMatrix(2, 2);
      f.a1(0, 0) = draw(rng, -5, 5);
      f.a1(1, 1) = draw(rng, -5, 5);
      f.a1(0, 1) = f.a1(1, 0) = draw(rng, -5, 5);
      f.gamma = RationalMatrix::identity(2);
      // outside the support of d the columns of C span a line, so no
      // (xi_b1, xi_b2) of rank 2 can sit next to three nonzero d's
      const auto support = support_of_three(n - 2, rng);
      const long u0 = draw(rng, 1, 3), u1 = draw(rng, -3, 3);
      f.c = IntegerMatrix(2, n - 2);
      for (std::size_t j = 0; j < n - 2; ++j) {
        const long m = draw(rng, -2, 2);
        f.c(0, j) = m * u0;
        f.c(1, j) = m * u1;
      }
      f.c(0, support[0]) = 1;
      f.c(1, support[0]) = 0;
      f.c(0, support[1]) = 0;
      f.c(1, support[1]) = 1;
      f.h = RationalMatrix(2, 2);
      f.d.assign(n - 2, 0);
      for (const auto k : support) f.d[k] = draw(rng, 1, 5);
      expect_no_quintuple(s, f, find_quintuple_case22, "case-22 negative control");
      s.check(!oracle::case22_quintuple_exists(f), [&] { return "oracle finds a quintuple in a negative control"; });
    });
  }
  return s.finish(start);
}

// --------------------------------------------------------------------------

std::vector<SymmetricIntMatrix> arithmetic_matrices(std::uint64_t seed, std::size_t count, std::size_t n_max) {
  std::mt19937_64 rng(seed);
  std::vector<SymmetricIntMatrix> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_symmetric(1 + i % n_max, -5, 5, rng));
  return out;
}

SuiteResult gauss_crt(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("gauss-crt", "arithmetic-local");
  const auto mats = arithmetic_matrices(opt.seed ^ 0x55, 20, 4);
  for (const auto& a : mats) {
    s.guard("matrix " + matrix_text(a), [&] {
      LocalArithmetic local(a, opt.limits);
      auto eval = [&](std::uint64_t q, std::uint64_t r) {
        return opt.gauss_sum ? opt.gauss_sum(a, q, r) : local.gauss_sum_direct(q, r);
      };
      for (std::uint64_t q = 2; q <= 60; ++q) {
        // every split q = q1 q2 with coprime factors > 1
        for (std::uint64_t q1 = 2; q1 < q; ++q1) {
          if (q % q1) continue;
          const std::uint64_t q2 = q / q1;
          if (q1 > q2 || std::gcd(q1, q2) != 1) continue;
          for (std::uint64_t r = 1; r < q; ++r) {
            if (std::gcd(r, q) != 1) continue;
            const Complex lhs = eval(q, r);
            const Complex rhs = eval(q1, r * q2 % q1) * eval(q2, r * q1 % q2);
            s.check(close_rel(lhs, rhs, 1e-9), [&] {
              return "C(" + std::to_string(q) + ", " + std::to_string(r) + ") = " + fmt(lhs) + " but split " +
                     std::to_string(q1) + "*" + std::to_string(q2) + " gives " + fmt(rhs) + " for " + matrix_text(a);
            });
          }
        }
      }
      for (std::uint64_t q = 2; q <= 60; ++q) {
        for (std::uint64_t r = 1; r < q; ++r) {
          if (std::gcd(r, q) != 1) continue;
          const Complex c = eval(q, r);
          s.check(std::abs(eval(q, q - r) - std::conj(c)) <= 1e-12 * std::max(1.0, std::abs(c)),
                  [&] { return "conjugation symmetry fails at q = " + std::to_string(q); });
        }
      }
      if (!opt.gauss_sum) {
        for (std::uint64_t q = 2; q <= 12; ++q)
          for (std::uint64_t r = 1; r < q; ++r)
            if (std::gcd(r, q) == 1) {
              const Complex fast = local.gauss_sum_direct(q, r);
              const Complex slow = oracle::gauss_sum(a, q, r);
              s.check(close_rel(fast, slow, 1e-9),
                      [&] { return "count-based C(q, a) disagrees with term-by-term sum"; });
              s.check(close_rel(local.gauss_sum(q, r), fast, 1e-9), [&] { return "CRT evaluator disagrees"; });
            }
      }
    });
  }
  return s.finish(start);
}

SuiteResult local_density_identity(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("local-density-identity", "arithmetic-local");
  std::mt19937_64 rng(opt.seed ^ 0x66);
  const auto mats = arithmetic_matrices(opt.seed ^ 0x67, 10, 4);
  bool paper_norm_breaks = false;
  for (const auto& a : mats) {
    const Integer t = draw(rng, -20, 20);
    s.guard("matrix " + matrix_text(a), [&] {
      LocalArithmetic local(a, opt.limits);
      for (const std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
        const unsigned kmax = p == 5 ? 2 : 3;
        for (unsigned k = 1; k <= kmax; ++k) {
          Complex lhs = 0, lhs_paper = 0;
          for (unsigned j = 0; j <= k; ++j) {
            lhs += local.term(ipow(p, j), t);
            lhs_paper += local.term(ipow(p, j), t, SeriesNormalization::PhiOnce);
          }
          const std::uint64_t q = ipow(p, k);
          const std::uint64_t count = oracle::residue_count(a, q, t);
          const double rhs = static_cast<double>(q) * static_cast<double>(count) /
                             std::pow(static_cast<double>(euler_phi(q)), static_cast<double>(a.n()));
          s.check(close_rel(lhs.real(), rhs, 1e-9) && std::abs(lhs.imag()) <= 1e-9 * std::max(1.0, rhs), [&] {
            return "sum of T over divisors of " + std::to_string(q) + " = " + fmt(lhs) + ", density " + fmt(rhs) +
                   " for " + matrix_text(a) + ", t = " + to_string(t);
          });
          const auto dens = local.local_density(p, k, t);
          s.check(dens.count == count && close_rel(dens.value, rhs, 1e-12),
                  [&] { return "local_density disagrees with the oracle count"; });
          if (!close_rel(lhs_paper.real(), rhs, 1e-9)) paper_norm_breaks = true;
        }
      }
    });
  }
  s.note(std::string("1/phi(q) normalization breaks the identity on this sample: ") +
         (paper_norm_breaks ? "yes" : "no"));
  return s.finish(start);
}

SuiteResult hua_congruence(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("hua-congruence", "arithmetic-local");
  LocalArithmetic local(SymmetricIntMatrix::identity(5), opt.limits);
  SeriesOptions so;
  so.limits = opt.limits;
  for (long t = 1; t <= 48; ++t) {
    s.guard("t = " + std::to_string(t), [&] {
      const auto rep = singular_series_truncated(local, Integer(t), 12, so);
      if (t % 24 == 5)
        s.check(rep.product_estimate > 0,
                [&] { return "t = " + std::to_string(t) + ": product " + fmt(rep.product_estimate) + " not > 0"; });
      else
        s.check(rep.product_estimate == 0.0,
                [&] { return "t = " + std::to_string(t) + ": product " + fmt(rep.product_estimate) + " not 0"; });
    });
  }
  return s.finish(start);
}

// --------------------------------------------------------------------------

void compare_counts(Suite& s, const ProblemInstance& inst, std::uint64_t X, const Limits& limits) {
  const auto fast = count_solutions(inst, X, limits);
  const auto slow = oracle::count_solutions(inst, X);
  const std::string label = matrix_text(inst.a) + ", t = " + to_string(inst.t) + ", X = " + std::to_string(X);
  s.check(fast.unit_count == slow.unit_count, [&] {
    return "unit count " + std::to_string(fast.unit_count) + " vs oracle " + std::to_string(slow.unit_count) +
           " on " + label;
  });
  s.check(fast.prime_only_count == slow.prime_only_count, [&] { return "prime-only count differs on " + label; });
  s.check(close_rel(fast.lambda_weighted, slow.lambda_weighted, 1e-9),
          [&] { return "weighted count differs on " + label; });
  const double cap = std::pow(std::log(static_cast<double>(X)), static_cast<double>(inst.n())) *
                     static_cast<double>(fast.unit_count);
  s.check(fast.lambda_weighted <= cap * (1 + 1e-12) && fast.prime_only_count <= fast.unit_count,
          [&] { return "weighted count exceeds (log X)^n * unit count on " + label; });
}

SuiteResult count_oracle(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("count-oracle", "counting");
  std::mt19937_64 rng(opt.seed ^ 0x77);
  for (int i = 0; i < 24; ++i) {
    const std::size_t n = 1 + i % 3;
    const std::uint64_t X = (i / 3) % 3 == 0 ? 10 : ((i / 3) % 3 == 1 ? 30 : 100);
    auto a = random_symmetric(n, -3, 3, rng);
    s.guard("count " + matrix_text(a), [&] {
      const VonMangoldtTable table(X);
      const auto& pp = table.prime_powers();
      // t attained by a random tuple half of the time
      Integer t = draw(rng, -50, 50);
      if (i % 2 == 0) {
        t = 0;
        std::vector<Integer> x(n);
        for (auto& v : x) v = pp[draw(rng, 0, static_cast<long>(pp.size()) - 1)];
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) t += a(r, c) * x[r] * x[c];
      }
      compare_counts(s, ProblemInstance{a, t}, X, opt.limits);
    });
  }
  s.guard("I5 t = 53", [&] { compare_counts(s, ProblemInstance{SymmetricIntMatrix::identity(5), 53}, 10, opt.limits); });
  s.guard("thread determinism", [&] {
    const ProblemInstance inst{SymmetricIntMatrix{{1, 1, 0}, {1, -2, 1}, {0, 1, 3}}, 101};
    Limits one = opt.limits, many = opt.limits;
    one.threads = 1;
    many.threads = 4;
    const auto a = count_solutions(inst, 100, one), b = count_solutions(inst, 100, many);
    s.check(a.unit_count == b.unit_count && a.lambda_weighted == b.lambda_weighted,
            [&] { return "count depends on the thread count"; });
  });

  for (int i = 0; i < 16; ++i) {
    s.guard("bilinear " + std::to_string(i), [&] {
      const std::size_t n = draw(rng, 1, 2), k = draw(rng, 1, 2), m = i % 3 == 0 ? 1 : 0;
      BilinearSystem sys;
      sys.c = RationalMatrix(n, k);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < k; ++c) sys.c(r, c) = make_rational(Integer(draw(rng, -2, 2)), Integer(draw(rng, 1, 2)));
      sys.h = RationalMatrix(n, m);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < m; ++c) sys.h(r, c) = draw(rng, -2, 2);
      sys.box = i % 2 ? Box::Symmetric : Box::Positive;
      const std::uint64_t X = draw(rng, 2, 5);
      const auto fast = count_bilinear(sys, X, opt.limits);
      const auto slow = oracle::count_bilinear(sys, X);
      s.check(fast == slow, [&] {
        return "bilinear count " + std::to_string(fast) + " vs oracle " + std::to_string(slow);
      });
      if (m == 0) {
        BilinearSystem tr{sys.c.transpose(), RationalMatrix(k, 0), sys.box};
        s.check(count_bilinear(tr, X, opt.limits) == fast, [&] { return "bilinear count not transpose symmetric"; });
      }
    });
  }
  for (int i = 0; i < 8; ++i) {
    s.guard("paired " + std::to_string(i), [&] {
      const std::size_t n = 1 + i % 2;
      RationalMatrix c(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t q = r; q < n; ++q) c(r, q) = c(q, r) = draw(rng, -3, 3);
      RationalMatrix h(n, i % 4 == 0 ? 1 : 0);
      for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t q = 0; q < h.cols(); ++q) h(r, q) = draw(rng, -2, 2);
      const std::uint64_t X = draw(rng, 3, 6);
      for (const bool weighted : {false, true}) {
        const auto fast = count_paired_system(c, h, X, weighted, opt.limits);
        const auto slow = oracle::count_paired_system(c, h, X, weighted);
        s.check(fast.unit == slow.unit && close_rel(fast.value, slow.value, 1e-9),
                [&] { return std::string("paired count differs (weighted = ") + (weighted ? "1" : "0") + ")"; });
      }
    });
  }
  return s.finish(start);
}

RationalMatrix random_injection_c(std::size_t n, std::mt19937_64& rng) {
  RationalMatrix c(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t q = r; q < n; ++q)
      c(r, q) = c(q, r) = make_rational(Integer(draw(rng, -3, 3)), Integer(draw(rng, 1, 3)));
  return c;
}

SuiteResult injection(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("injection", "counting");
  std::mt19937_64 rng(opt.seed ^ 0x88);
  auto run = [&](const RationalMatrix& c, const RationalMatrix& h, std::uint64_t X, const std::string& label) {
    s.guard(label, [&] {
      const auto rep = verify_sum_difference_injection(c, h, X, opt.limits);
      s.check(rep.holds && rep.lhs <= rep.rhs, [&] {
        return label + ": lhs " + std::to_string(rep.lhs) + " > rhs " + std::to_string(rep.rhs);
      });
      if (c.rows() <= 2 && X <= 4) {
        const auto slow = oracle::count_paired_system(c, h, X, false);
        s.check(slow.unit == rep.lhs, [&] { return label + ": lhs differs from the oracle paired count"; });
      }
    });
  };
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + i % 3;
    const auto c = random_injection_c(n, rng);
    RationalMatrix h(n, i % 3 == 1 ? 1 : 0);
    for (std::size_t r = 0; r < h.rows() && h.cols() == 1; ++r) h(r, 0) = draw(rng, -2, 2);
    const std::uint64_t X = n == 3 ? draw(rng, 2, 6) : draw(rng, 2, 8);
    run(c, h, X, "random C #" + std::to_string(i));
  }
  run(RationalMatrix{{1}}, RationalMatrix(1, 0), 3, "C = [1], X = 3");
  run(RationalMatrix{{1, 0}, {0, -1}}, RationalMatrix(2, 0), 3, "C = diag(1, -1), X = 3");
  run(RationalMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}, RationalMatrix(3, 0), 8, "C = diag(1, -1, 0), X = 8");
  return s.finish(start);
}

SuiteResult bilinear_growth(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("bilinear-growth", "counting");
  const std::vector<std::uint64_t> xs{50, 100, 200, 400};
  s.guard("diag(1, -1)", [&] {
    BilinearSystem sys{RationalMatrix{{1, 0}, {0, -1}}, RationalMatrix(2, 0), Box::Positive};
    std::vector<std::pair<double, double>> samples;
    for (auto X : xs) samples.emplace_back(double(X), double(count_bilinear(sys, X, opt.limits)));
    const auto fit = growth_exponent_fit(samples, 2.0);
    s.check(fit.slope >= 1.75 && fit.slope <= 2.25, [&] { return "slope " + fmt(fit.slope) + " outside [1.75, 2.25]"; });
    s.note("diag(1, -1) slope " + fmt(fit.slope));
  });
  s.guard("C = 0", [&] {
    BilinearSystem sys{RationalMatrix(2, 2), RationalMatrix(2, 0), Box::Positive};
    std::vector<std::pair<double, double>> samples;
    for (auto X : xs) samples.emplace_back(double(X), double(count_bilinear(sys, X, opt.limits)));
    const auto fit = growth_exponent_fit(samples, 4.0);
    s.check(std::abs(fit.slope - 4.0) <= 1e-6, [&] { return "calibration slope " + fmt(fit.slope) + " != 4"; });
  });
  return s.finish(start);
}

// --------------------------------------------------------------------------

SuiteResult histogram_consistency(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("histogram-consistency", "circle-arcs");
  std::mt19937_64 rng(opt.seed ^ 0x99);
  for (int i = 0; i < 12; ++i) {
    const std::size_t n = 1 + i % 3;
    const std::uint64_t X = n == 3 ? 60 : 100;
    const auto a = random_symmetric(n, -3, 3, rng);
    s.guard("histogram " + matrix_text(a), [&] {
      const auto hu = representation_histogram(a, X, Weights::Unit, opt.limits);
      const auto hl = representation_histogram(a, X, Weights::Lambda, opt.limits);
      const VonMangoldtTable table(X);
      s.check(close_rel(hl.total_mass(), std::pow(table.psi(), double(n)), 1e-9),
              [&] { return "weighted mass != psi(X)^n"; });
      const double units = std::pow(double(table.prime_powers().size()), double(n));
      s.check(hu.total_mass() == units, [&] { return "unit mass != P^n"; });
      for (int k = 0; k < 4; ++k) {
        const std::int64_t t = hu.m[draw(rng, 0, static_cast<long>(hu.m.size()) - 1)];
        const auto c = count_solutions(ProblemInstance{a, Integer(static_cast<long>(t))}, X, opt.limits);
        s.check(hu.at(t) == double(c.unit_count), [&] { return "unit r(t) != count_solutions"; });
        s.check(close_rel(hl.at(t), c.lambda_weighted, 1e-9), [&] { return "weighted r(t) != count_solutions"; });
      }
      if (n <= 2) {
        const auto h40 = representation_histogram(a, 40, Weights::Lambda, opt.limits);
        for (const double alpha : {0.0, 0.125, 0.3333, 0.71}) {
          const Complex slow = oracle::s_alpha(a, 40, Weights::Lambda, alpha);
          s.check(close_rel(s_alpha(h40, alpha), slow, 1e-9), [&] { return "S(alpha) differs from n-fold sum"; });
        }
      }
    });
  }
  s.guard("block split", [&] {
    const SymmetricIntMatrix a{{1, 2, 0, 0}, {2, -1, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, -2}};
    const auto split = find_block_split(a);
    s.check(split.has_value(), [&] { return "no split found for a block-diagonal matrix"; });
    if (split) {
      const auto direct = representation_histogram(a, 20, Weights::Lambda, opt.limits);
      const auto joined = representation_histogram_split(a, *split, 20, Weights::Lambda, opt.limits);
      bool same = direct.m == joined.m;
      for (std::size_t i = 0; same && i < direct.r.size(); ++i) same = close_rel(joined.r[i], direct.r[i], 1e-9);
      s.check(same, [&] { return "split histogram differs from the direct one"; });
    }
  });
  return s.finish(start);
}

SuiteResult fourier_completeness(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("fourier-completeness", "circle-arcs");
  std::mt19937_64 rng(opt.seed ^ 0xAA);
  struct Case {
    SymmetricIntMatrix a;
    std::uint64_t X;
    double K;
    Weights w;
  };
  std::vector<Case> cases;
  const std::uint64_t xs[] = {50, 100, 300};
  const double ks[] = {0.0, 1.0, 2.0};
  for (int i = 0; i < 12; ++i) {
    const std::size_t n = 1 + i % 3;
    cases.push_back({random_symmetric(n, -4, 4, rng), xs[(i / 3) % 3], ks[i % 3], i % 2 ? Weights::Lambda : Weights::Unit});
  }
  cases.push_back({SymmetricIntMatrix::identity(3), 300, 2.0, Weights::Lambda});
  for (const auto& c : cases) {
    s.guard("instance " + matrix_text(c.a), [&] {
      const auto hist = representation_histogram(c.a, c.X, c.w, opt.limits);
      const auto arcs = build_arcs(c.X, c.K);
      const auto cover = full_cover_arcs(c.X);
      std::vector<std::int64_t> ts{hist.m[hist.m.size() / 2], hist.m[draw(rng, 0, static_cast<long>(hist.m.size()) - 1)],
                                   hist.m_max + 1};
      for (const auto t : ts) {
        const double r = hist.at(t);
        const auto rep = major_arc_integral(hist, t, arcs);
        s.check(std::abs(rep.I_major + rep.I_minor - r) <= 1e-6 * std::max(1.0, std::abs(r)), [&] {
          return "I_major + I_minor = " + fmt(rep.I_major + rep.I_minor) + " but r(t) = " + fmt(r) + " for " +
                 matrix_text(c.a) + ", t = " + std::to_string(t) + ", X = " + std::to_string(c.X);
        });
        const auto full = major_arc_integral(hist, t, cover);
        s.check(std::abs(full.I_major - r) <= 1e-6 * std::max(1.0, std::abs(r)),
                [&] { return "full cover returns " + fmt(full.I_major) + " instead of " + fmt(r); });
      }
    });
  }
  return s.finish(start);
}

SuiteResult arc_properties(const VerifyOptions& opt) {
  (void)opt;
  const auto start = now();
  Suite s("arc-properties", "circle-arcs");
  s.guard("arc counts", [&] {
    s.check(build_arcs(22027, 1.0).arcs.size() == 32, [&] { return "X = 22027, K = 1 should give 32 arcs"; });
    s.check(build_arcs(22026, 1.0).arcs.size() == 28, [&] { return "X = 22026, K = 1 should give 28 arcs"; });
  });
  for (const std::uint64_t X : {50ULL, 300ULL, 1000ULL, 22027ULL}) {
    for (const double K : {0.0, 1.0, 2.0}) {
      s.guard("X = " + std::to_string(X), [&] {
        const auto fam = build_arcs(X, K);
        s.check(arcs_disjoint(fam), [&] { return "arcs overlap"; });
        Rational expected = 0;
        const auto qmax = static_cast<std::uint64_t>(std::floor(fam.P + 1e-9));
        for (std::uint64_t q = 1; q <= qmax; ++q)
          expected += 2 * fam.arcs.front().halfwidth * fam.arcs.front().q * Integer(static_cast<unsigned long>(euler_phi(q))) /
                      Integer(static_cast<unsigned long>(q));
        s.check(fam.measure() == expected, [&] { return "arc measure differs from sum 2 P phi(q) / (q X^2)"; });
        const Rational lo = make_rational(1, Integer(static_cast<unsigned long>(X)));
        for (const auto& arc : fam.arcs)
          s.check(arc.center() - arc.halfwidth >= lo && arc.center() + arc.halfwidth <= 1 + lo,
                  [&] { return "arc leaves [1/X, 1 + 1/X]"; });
      });
    }
  }
  s.guard("P too large", [&] {
    try {
      (void)build_arcs(50, 3.0);
      s.check(false, [&] { return "build_arcs accepted P > X/2"; });
    } catch (const Error& e) {
      s.check(e.code() == ErrorCode::PTooLarge, [&] { return "expected PTooLarge"; });
    }
  });
  return s.finish(start);
}

// --------------------------------------------------------------------------

SuiteResult determinism(const VerifyOptions& opt) {
  const auto start = now();
  Suite s("determinism", "cli-harness");
  s.guard("repeat runs", [&] {
    const ProblemInstance inst{SymmetricIntMatrix{{2, 1, 0}, {1, -3, 0}, {0, 0, 1}}, 47};
    SeriesOptions so;
    so.limits = opt.limits;
    const auto a = singular_series_truncated(inst, 30, so);
    const auto b = singular_series_truncated(inst, 30, so);
    s.check(a.partial_sum == b.partial_sum && a.product_estimate == b.product_estimate,
            [&] { return "singular series not reproducible"; });
    const auto h1 = representation_histogram(inst.a, 80, Weights::Lambda, opt.limits);
    Limits single = opt.limits;
    single.threads = 1;
    const auto h2 = representation_histogram(inst.a, 80, Weights::Lambda, single);
    s.check(h1.m == h2.m && h1.r == h2.r, [&] { return "histogram depends on the thread count"; });
  });
  return s.finish(start);
}

struct SuiteEntry {
  const char* module;
  SuiteResult (*run)(const VerifyOptions&);
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries{
      {"exact-linalg", linalg_properties},
      {"offdiag-rank", offdiag_equivalence},
      {"structure-decomp", structure_round_trip},
      {"structure-decomp", quintuple_validity},
      {"arithmetic-local", gauss_crt},
      {"arithmetic-local", local_density_identity},
      {"arithmetic-local", hua_congruence},
      {"counting", count_oracle},
      {"counting", injection},
      {"counting", bilinear_growth},
      {"circle-arcs", histogram_consistency},
      {"circle-arcs", fourier_completeness},
      {"circle-arcs", arc_properties},
      {"cli-harness", determinism},
  };
  return entries;
}

}  // namespace

bool VerifyReport::overall() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

const SuiteResult* VerifyReport::find(const std::string& name) const {
  for (const auto& s : suites)
    if (s.name == name) return &s;
  return nullptr;
}

const std::vector<std::string>& verify_modules() {
  static const std::vector<std::string> modules{"exact-linalg",     "offdiag-rank", "structure-decomp", "arithmetic-local",
                                                "counting",         "circle-arcs",  "cli-harness"};
  return modules;
}

VerifyReport run_verify(const VerifyOptions& options) {
  const auto& mods = verify_modules();
  if (options.scope != "all" && std::find(mods.begin(), mods.end(), options.scope) == mods.end())
    fail(ErrorCode::InvalidArgument, "unknown verify scope: " + options.scope);
  const auto start = now();
  VerifyReport report;
  for (const auto& entry : registry())
    if (options.scope == "all" || options.scope == entry.module) report.suites.push_back(entry.run(options));
  report.seconds = std::chrono::duration<double>(now() - start).count();
  return report;
}

SoftTrendReport run_soft_trends(const Limits& limits) {
  SoftTrendReport out;
  const auto a = SymmetricIntMatrix::identity(4);
  const auto split = find_block_split(a);
  auto share = [&](std::uint64_t X) -> std::optional<double> {
    const auto hist = representation_histogram_split(a, *split, X, Weights::Lambda, limits);
    // largest t = 4 mod 24 not above 2 X^2
    std::int64_t t = 2 * static_cast<std::int64_t>(X * X);
    t -= ((t - 4) % 24 + 24) % 24;
    return major_arc_integral(hist, t, build_arcs(X, 2.0)).major_share;
  };
  out.share_small = share(out.share_x_small);
  out.share_large = share(out.share_x_large);
  out.share_increases = out.share_small && out.share_large && *out.share_large > *out.share_small;

  auto ratio = [&](std::uint64_t X) {
    const auto scan = minor_arc_scan(Rational(1), build_arcs(X, 1.0), 10000, limits);
    return scan.sup_abs / static_cast<double>(X);
  };
  out.weyl_ratio_small = ratio(out.weyl_x_small);
  out.weyl_ratio_large = ratio(out.weyl_x_large);
  out.weyl_decreases = out.weyl_ratio_large < out.weyl_ratio_small;
  return out;
}

}  // namespace qfp
