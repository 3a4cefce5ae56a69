#include "qfp/structure.hpp"

#include "qfp/error.hpp"
#include "qfp/linalg.hpp"
#include "qfp/offdiag.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace qfp {

namespace {

std::string index_pair(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

IntegerMatrix block(const SymmetricIntMatrix& m, std::size_t r0, std::size_t c0, std::size_t rows,
                    std::size_t cols) {
  IntegerMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(r0 + i, c0 + j);
  return out;
}

void check_symmetric_2x2(const IntegerMatrix& m, const char* name) {
  if (m.rows() != 2 || m.cols() != 2 || m(0, 1) != m(1, 0)) {
    fail(ErrorCode::InvalidArgument, std::string(name) + " must be a symmetric 2x2 block");
  }
}

// Solves the trailing block T = D + h xi xi^T for (h, D), with h taken from
// the first off-diagonal pair where xi_k xi_l != 0 (h = 0 if there is none).
// Returns the first off-diagonal position that disagrees, if any.
std::optional<std::pair<std::size_t, std::size_t>> try_split_rank_one_tail(
    const SymmetricIntMatrix& m, std::size_t offset, const std::vector<Integer>& xi, Rational& h,
    std::vector<Rational>& d) {
  const std::size_t k = xi.size();
  h = 0;
  bool found = false;
  for (std::size_t i = 0; i < k && !found; ++i)
    for (std::size_t j = i + 1; j < k && !found; ++j)
      if (xi[i] != 0 && xi[j] != 0) {
        h = make_rational(m(offset + i, offset + j), xi[i] * xi[j]);
        found = true;
      }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (Rational(m(offset + i, offset + j)) != h * xi[i] * xi[j]) return std::make_pair(offset + i, offset + j);
  d.resize(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = Rational(m(offset + i, offset + i)) - h * xi[i] * xi[i];
  return std::nullopt;
}

void split_rank_one_tail(const SymmetricIntMatrix& m, std::size_t offset, const std::vector<Integer>& xi,
                         Rational& h, std::vector<Rational>& d) {
  if (const auto bad = try_split_rank_one_tail(m, offset, xi, h, d)) {
    fail(ErrorCode::InternalInconsistency,
         "trailing block minus h*xi*xi^T is not diagonal at " + index_pair(bad->first, bad->second));
  }
}

void require_same_dimension(const SymmetricIntMatrix& a, const Rank2CaseTag& tag, std::size_t min_n) {
  if (tag.perm.size() != a.n()) fail(ErrorCode::DimensionMismatch, "tag permutation has wrong length");
  if (a.n() < min_n) {
    fail(ErrorCode::InvalidArgument, "dimension " + std::to_string(a.n()) + " too small for this case");
  }
}

void check_tag(const SymmetricIntMatrix& a, const Rank2CaseTag& tag, Rank2Case expected) {
  if (tag.kind != expected) {
    fail(ErrorCode::CaseMismatch, "tag is " + std::string(to_string(tag.kind)) + ", expected " +
                                      std::string(to_string(expected)));
  }
  const auto actual = tag_at_placement(a, tag.perm);
  if (!actual || actual->kind != expected || actual->perm != tag.perm) {
    fail(ErrorCode::CaseMismatch, "tag placement does not realise " + std::string(to_string(expected)));
  }
}

std::vector<std::size_t> complement_of(const std::vector<std::size_t>& taken, std::size_t n) {
  std::vector<bool> used(n, false);
  for (auto v : taken) used[v] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!used[i]) rest.push_back(i);
  return rest;
}

}  // namespace

std::string_view to_string(Rank2Case c) {
  switch (c) {
    case Rank2Case::Case11: return "Case11";
    case Rank2Case::Case21: return "Case21";
    case Rank2Case::Case22: return "Case22";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// block forms
// ---------------------------------------------------------------------------

RationalMatrix block_form(const Rank1Form& f) {
  const std::size_t m = f.xi.size();
  if (f.d.size() != m) fail(ErrorCode::DimensionMismatch, "Rank1Form: xi and d lengths differ");
  RationalMatrix out(m + 1, m + 1);
  out(0, 0) = Rational(f.a);
  for (std::size_t i = 0; i < m; ++i) {
    out(0, i + 1) = out(i + 1, 0) = Rational(f.xi[i]);
    for (std::size_t j = 0; j < m; ++j) out(i + 1, j + 1) = f.h * f.xi[i] * f.xi[j];
    out(i + 1, i + 1) += f.d[i];
  }
  return out;
}

RationalMatrix block_form(const Rank2Form11& f) {
  const std::size_t m = f.d.size();
  if (f.c.rows() != 2 || f.c.cols() != m) fail(ErrorCode::DimensionMismatch, "Rank2Form11: C must be 2 x len(d)");
  const std::size_t n = m + 4;
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      out(i, j) = Rational(f.a1(i, j));
      out(i, 2 + j) = out(2 + j, i) = Rational(f.b(i, j));
      out(2 + i, 2 + j) = Rational(f.a2(i, j));
    }
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < m; ++k) out(2 + i, 4 + k) = out(4 + k, 2 + i) = Rational(f.c(i, k));
  for (std::size_t k = 0; k < m; ++k) out(4 + k, 4 + k) = f.d[k];
  return out;
}

RationalMatrix block_form(const Rank2Form21& f) {
  const std::size_t m = f.xi.size();
  if (f.v.size() != m || f.d.size() != m || f.gamma1.size() != 2 || f.gamma2.size() != 2) {
    fail(ErrorCode::DimensionMismatch, "Rank2Form21: inconsistent parameter lengths");
  }
  const std::size_t n = m + 3;
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = Rational(f.a1(i, j));
    out(i, 2) = out(2, i) = Rational(f.gamma1[i]);
    for (std::size_t k = 0; k < m; ++k) out(i, 3 + k) = out(3 + k, i) = f.gamma2[i] * f.xi[k];
  }
  out(2, 2) = Rational(f.a);
  for (std::size_t k = 0; k < m; ++k) {
    out(2, 3 + k) = out(3 + k, 2) = Rational(f.v[k]);
    for (std::size_t l = 0; l < m; ++l) out(3 + k, 3 + l) = f.h * f.xi[k] * f.xi[l];
    out(3 + k, 3 + k) += f.d[k];
  }
  return out;
}

RationalMatrix block_form(const Rank2Form22& f) {
  const std::size_t m = f.d.size();
  if (f.c.rows() != 2 || f.c.cols() != m) fail(ErrorCode::DimensionMismatch, "Rank2Form22: C must be 2 x len(d)");
  const std::size_t n = m + 2;
  const RationalMatrix c = f.c.to_rational();
  const RationalMatrix top = f.gamma * c;
  const RationalMatrix tail = c.transpose() * f.h * c;
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = Rational(f.a1(i, j));
    for (std::size_t k = 0; k < m; ++k) out(i, 2 + k) = out(2 + k, i) = top(i, k);
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < m; ++l) out(2 + k, 2 + l) = tail(k, l);
    out(2 + k, 2 + k) += f.d[k];
  }
  return out;
}

RationalMatrix block_form(const StructureForm& f) {
  return std::visit([](const auto& form) { return block_form(form); }, f);
}

SymmetricIntMatrix assemble(const Rank1Form& f) {
  if (std::all_of(f.xi.begin(), f.xi.end(), [](const Integer& z) { return z == 0; })) {
    fail(ErrorCode::InvalidArgument, "Rank1Form requires xi != 0");
  }
  return undo_permutation(block_form(f), f.perm);
}

SymmetricIntMatrix assemble(const Rank2Form11& f) {
  check_symmetric_2x2(f.a1, "A1");
  check_symmetric_2x2(f.a2, "A2");
  if (determinant(f.b.to_rational()) == 0) fail(ErrorCode::InvalidArgument, "Rank2Form11 requires B invertible");
  return undo_permutation(block_form(f), f.perm);
}

SymmetricIntMatrix assemble(const Rank2Form21& f) {
  check_symmetric_2x2(f.a1, "A1");
  RationalMatrix g(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    g(i, 0) = Rational(f.gamma1[i]);
    g(i, 1) = f.gamma2[i];
  }
  if (determinant(g) == 0) fail(ErrorCode::InvalidArgument, "Rank2Form21 requires (gamma1, gamma2) invertible");
  return undo_permutation(block_form(f), f.perm);
}

SymmetricIntMatrix assemble(const Rank2Form22& f) {
  check_symmetric_2x2(f.a1, "A1");
  if (determinant(f.gamma) == 0) fail(ErrorCode::InvalidArgument, "Rank2Form22 requires Gamma invertible");
  if (f.h.rows() != 2 || f.h.cols() != 2 || f.h(0, 1) != f.h(1, 0)) {
    fail(ErrorCode::InvalidArgument, "Rank2Form22 requires H symmetric 2x2");
  }
  return undo_permutation(block_form(f), f.perm);
}

SymmetricIntMatrix assemble(const StructureForm& f) {
  return std::visit([](const auto& form) { return assemble(form); }, f);
}

// ---------------------------------------------------------------------------
// rank 1
// ---------------------------------------------------------------------------

Rank1Form decompose_rank1(const SymmetricIntMatrix& a) {
  const std::size_t n = a.n();
  const auto report = offdiag_rank(a);
  if (report.value != 1) {
    fail(ErrorCode::NotOffDiagRank1, "rank_off(A) = " + std::to_string(report.value) + ", expected 1");
  }
  std::size_t pi = n, pj = n;
  for (std::size_t i = 0; i < n && pi == n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a(i, j) != 0) {
        pi = i;
        pj = j;
        break;
      }
  // When h = 0 the nonzero off-diagonal entries form a star, and only its
  // centre works as row 0; otherwise either endpoint does.
  std::optional<std::pair<std::size_t, std::size_t>> bad;
  for (const auto& [first, second] : {std::pair{pi, pj}, std::pair{pj, pi}}) {
    std::vector<std::size_t> image{first, second};
    for (std::size_t i = 0; i < n; ++i)
      if (i != pi && i != pj) image.push_back(i);
    Rank1Form f;
    f.perm = IndexPermutation(std::move(image));
    const auto m = conjugate_by_permutation(a, f.perm);
    f.a = m(0, 0);
    f.xi.resize(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) f.xi[k] = m(0, k + 1);
    bad = try_split_rank_one_tail(m, 1, f.xi, f.h, f.d);
    if (!bad) return f;
  }
  fail(ErrorCode::InternalInconsistency,
       "trailing block minus h*xi*xi^T is not diagonal at " + index_pair(bad->first, bad->second));
}

// ---------------------------------------------------------------------------
// rank 2 classification
// ---------------------------------------------------------------------------

std::optional<Rank2CaseTag> tag_at_placement(const SymmetricIntMatrix& a, const IndexPermutation& p) {
  const std::size_t n = a.n();
  if (n < 4) return std::nullopt;
  if (p.size() != n) fail(ErrorCode::DimensionMismatch, "placement permutation has wrong length");
  const std::vector<std::size_t> rows{p[0], p[1]};
  if (rank_of_submatrix(a, rows, {p[2], p[3]}) != 2) return std::nullopt;

  std::vector<std::size_t> b1{p[2]}, b2{p[3]};
  for (std::size_t k = 4; k < n; ++k) {
    b1.push_back(p[k]);
    b2.push_back(p[k]);
  }
  const std::size_t r1 = rank_of_submatrix(a, rows, b1);
  const std::size_t r2 = rank_of_submatrix(a, rows, b2);

  Rank2CaseTag tag;
  tag.perm = p;
  tag.rank_b1 = r1;
  tag.rank_b2 = r2;
  if (r1 == 1 && r2 == 1) {
    tag.kind = Rank2Case::Case11;
  } else if (r1 == 2 && r2 == 2) {
    tag.kind = Rank2Case::Case22;
  } else {
    tag.kind = Rank2Case::Case21;
    if (r1 < r2) {
      auto image = p.image();
      std::swap(image[2], image[3]);
      tag.perm = IndexPermutation(std::move(image));
      std::swap(tag.rank_b1, tag.rank_b2);
    }
  }
  return tag;
}

Rank2CaseTag classify_rank2(const SymmetricIntMatrix& a) {
  const std::size_t n = a.n();
  const auto report = offdiag_rank(a);
  if (report.value != 2) {
    fail(ErrorCode::NotOffDiagRank2, "rank_off(A) = " + std::to_string(report.value) + ", expected 2");
  }
  std::optional<Rank2CaseTag> best;
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = i1 + 1; i2 < n; ++i2)
      for (std::size_t j1 = 0; j1 < n; ++j1) {
        if (j1 == i1 || j1 == i2) continue;
        for (std::size_t j2 = j1 + 1; j2 < n; ++j2) {
          if (j2 == i1 || j2 == i2) continue;
          std::vector<std::size_t> image{i1, i2, j1, j2};
          for (auto r : complement_of(image, n)) image.push_back(r);
          auto tag = tag_at_placement(a, IndexPermutation(std::move(image)));
          if (!tag) continue;
          if (!best || tag->kind < best->kind) best = std::move(tag);
          if (best->kind == Rank2Case::Case11) return *best;
        }
      }
  if (!best) fail(ErrorCode::InternalInconsistency, "rank_off(A) = 2 but no rank-2 2x2 placement found");
  return *best;
}

// ---------------------------------------------------------------------------
// rank 2 decompositions
// ---------------------------------------------------------------------------

Rank2Form11 decompose_case11(const SymmetricIntMatrix& a, const Rank2CaseTag& tag) {
  require_same_dimension(a, tag, 4);
  check_tag(a, tag, Rank2Case::Case11);
  const std::size_t n = a.n();
  const auto m = conjugate_by_permutation(a, tag.perm);

  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 4; k < n; ++k)
      if (m(i, k) != 0) {
        fail(ErrorCode::InternalInconsistency, "gamma_j != 0 for j >= 3 at " + index_pair(i, k));
      }
  for (std::size_t k = 4; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l)
      if (m(k, l) != 0) {
        fail(ErrorCode::InternalInconsistency, "trailing block is not diagonal at " + index_pair(k, l));
      }

  Rank2Form11 f;
  f.perm = tag.perm;
  f.a1 = block(m, 0, 0, 2, 2);
  f.b = block(m, 0, 2, 2, 2);
  f.a2 = block(m, 2, 2, 2, 2);
  f.c = block(m, 2, 4, 2, n - 4);
  f.d.resize(n - 4);
  for (std::size_t k = 4; k < n; ++k) f.d[k - 4] = Rational(m(k, k));
  return f;
}

Rank2Form21 decompose_case21(const SymmetricIntMatrix& a, const Rank2CaseTag& tag) {
  require_same_dimension(a, tag, 4);
  check_tag(a, tag, Rank2Case::Case21);
  const std::size_t n = a.n();
  const std::size_t len = n - 3;
  const auto m = conjugate_by_permutation(a, tag.perm);

  // B2 = rows {0,1} x cols {3..n-1} has rank 1: factor it as gamma2 xi^T.
  std::size_t row = 1;
  for (std::size_t k = 0; k < len; ++k)
    if (m(0, 3 + k) != 0) row = 0;
  std::vector<Integer> xi(len);
  Integer g = 0;
  for (std::size_t k = 0; k < len; ++k) {
    xi[k] = m(row, 3 + k);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), xi[k].get_mpz_t());
  }
  if (g == 0) fail(ErrorCode::InternalInconsistency, "B2 is zero although rank(B2) = 1");
  std::size_t lead = 0;
  while (xi[lead] == 0) ++lead;
  if (xi[lead] < 0) g = -g;
  for (auto& z : xi) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());

  Rank2Form21 f;
  f.perm = tag.perm;
  f.a1 = block(m, 0, 0, 2, 2);
  f.gamma1 = {m(0, 2), m(1, 2)};
  f.gamma2 = {make_rational(m(0, 3 + lead), xi[lead]), make_rational(m(1, 3 + lead), xi[lead])};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < len; ++k)
      if (Rational(m(i, 3 + k)) != f.gamma2[i] * xi[k]) {
        fail(ErrorCode::InternalInconsistency, "B2 is not gamma2 xi^T at " + index_pair(i, 3 + k));
      }
  RationalMatrix gg{{Rational(f.gamma1[0]), f.gamma2[0]}, {Rational(f.gamma1[1]), f.gamma2[1]}};
  if (determinant(gg) == 0) fail(ErrorCode::InternalInconsistency, "(gamma1, gamma2) is singular");

  f.xi = std::move(xi);
  f.a = m(2, 2);
  f.v.resize(len);
  for (std::size_t k = 0; k < len; ++k) f.v[k] = m(2, 3 + k);
  split_rank_one_tail(m, 3, f.xi, f.h, f.d);
  return f;
}

Rank2Form22 decompose_case22(const SymmetricIntMatrix& a, const Rank2CaseTag& tag) {
  require_same_dimension(a, tag, 4);
  if (a.n() == 4) {
    // B1 and B2 are single columns here, so the rank pattern says nothing;
    // an explicit Case22 request only needs B invertible
    if (tag.kind != Rank2Case::Case22) fail(ErrorCode::CaseMismatch, "tag is not Case22");
    if (!tag_at_placement(a, tag.perm)) fail(ErrorCode::CaseMismatch, "B is singular at the tag placement");
  } else {
    check_tag(a, tag, Rank2Case::Case22);
  }
  const std::size_t n = a.n();
  const std::size_t len = n - 2;
  const auto m = conjugate_by_permutation(a, tag.perm);

  // Gamma pinned to B's columns before rescaling; raw = B^{-1} * top-right.
  RationalMatrix b(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) b(i, j) = Rational(m(i, 2 + j));
  const Rational det = determinant(b);
  if (det == 0) fail(ErrorCode::InternalInconsistency, "B is singular");
  RationalMatrix b_inv{{b(1, 1) / det, -b(0, 1) / det}, {-b(1, 0) / det, b(0, 0) / det}};
  RationalMatrix top(2, len);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < len; ++k) top(i, k) = Rational(m(i, 2 + k));
  const RationalMatrix raw = b_inv * top;
  const Integer lambda = lcm_of_denominators(raw.entries());

  Rank2Form22 f;
  f.perm = tag.perm;
  f.a1 = block(m, 0, 0, 2, 2);
  f.c = IntegerMatrix(2, len);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < len; ++k) {
      const Rational v = raw(i, k) * lambda;
      f.c(i, k) = v.get_num();
    }
  f.gamma = RationalMatrix(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) f.gamma(i, j) = b(i, j) / lambda;

  // Off-diagonal trailing entries: T_kl = h00 c0k c0l + h01 (c0k c1l + c1k c0l) + h11 c1k c1l.
  const std::size_t eqs = len * (len - 1) / 2;
  RationalMatrix sys(eqs, 3);
  std::vector<Rational> rhs(eqs);
  std::size_t e = 0;
  for (std::size_t k = 0; k < len; ++k)
    for (std::size_t l = k + 1; l < len; ++l, ++e) {
      const Integer& c0k = f.c(0, k);
      const Integer& c1k = f.c(1, k);
      const Integer& c0l = f.c(0, l);
      const Integer& c1l = f.c(1, l);
      sys(e, 0) = Rational(c0k * c0l);
      sys(e, 1) = Rational(c0k * c1l + c1k * c0l);
      sys(e, 2) = Rational(c1k * c1l);
      rhs[e] = Rational(m(2 + k, 2 + l));
    }
  const auto sol = solve_linear_system(sys, rhs);
  if (!sol.consistent) {
    fail(ErrorCode::InternalInconsistency, "trailing off-diagonal entries are not of the form C^T H C");
  }
  f.h_underdetermined = sol.rank < 3;
  f.h = RationalMatrix{{sol.solution[0], sol.solution[1]}, {sol.solution[1], sol.solution[2]}};

  const RationalMatrix cr = f.c.to_rational();
  const RationalMatrix cthc = cr.transpose() * f.h * cr;
  f.d.resize(len);
  for (std::size_t k = 0; k < len; ++k) f.d[k] = Rational(m(2 + k, 2 + k)) - cthc(k, k);
  return f;
}

StructureForm decompose(const SymmetricIntMatrix& a) {
  const auto report = offdiag_rank(a);
  if (report.value == 1) return decompose_rank1(a);
  if (report.value != 2) {
    fail(ErrorCode::UnsupportedOffDiagRank,
         "decomposition is defined for rank_off in {1, 2}, got " + std::to_string(report.value));
  }
  const auto tag = classify_rank2(a);
  switch (tag.kind) {
    case Rank2Case::Case11: return decompose_case11(a, tag);
    case Rank2Case::Case21: return decompose_case21(a, tag);
    case Rank2Case::Case22: return decompose_case22(a, tag);
  }
  fail(ErrorCode::InternalInconsistency, "unreachable case tag");
}

// ---------------------------------------------------------------------------
// quintuples
// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> support(const std::vector<Rational>& d) {
  std::vector<std::size_t> s;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k] != 0) s.push_back(k);
  return s;
}

bool column_pair_rank2(const IntegerMatrix& c, std::size_t k, std::size_t l) {
  return c(0, k) * c(1, l) - c(1, k) * c(0, l) != 0;
}

}  // namespace

QuintupleSelection find_quintuple_rank1(const Rank1Form& f, std::size_t rank_a) {
  if (rank_a < 6) fail(ErrorCode::NoQuintuple, "rank(A) = " + std::to_string(rank_a) + " < 6");
  const auto s = support(f.d);
  QuintupleSelection q;
  q.kind = QuintupleKind::Rank1Quintuple;
  if (s.size() >= 5) {
    std::size_t b1 = f.xi.size();
    for (std::size_t k = 0; k < f.xi.size(); ++k)
      if (f.xi[k] != 0) {
        b1 = k;
        break;
      }
    if (b1 == f.xi.size()) fail(ErrorCode::NoQuintuple, "xi = 0");
    q.b[0] = b1;
    std::size_t slot = 1;
    for (auto k : s) {
      if (k == b1) continue;
      q.b[slot++] = k;
      if (slot == 5) break;
    }
    return q;
  }
  if (s.size() == 4) {
    // boundary case: c_j != 0 must exist outside the support of D
    for (std::size_t j = 0; j < f.xi.size(); ++j) {
      if (f.xi[j] == 0 || std::binary_search(s.begin(), s.end(), j)) continue;
      q.b = {j, s[0], s[1], s[2], s[3]};
      return q;
    }
    fail(ErrorCode::NoQuintuple, "rank(D) = 4 and every c_j outside the support of D vanishes");
  }
  fail(ErrorCode::NoQuintuple, "rank(D) = " + std::to_string(s.size()) + " < 4");
}

QuintupleSelection find_quintuple_case22(const Rank2Form22& f, std::size_t rank_a) {
  if (rank_a < 8) fail(ErrorCode::NoQuintuple, "rank(A) = " + std::to_string(rank_a) + " < 8");
  const auto s = support(f.d);
  const std::size_t len = f.c.cols();
  QuintupleSelection q;
  q.kind = QuintupleKind::Rank2Quintuple;
  if (s.size() >= 5) {
    for (std::size_t k = 0; k < len; ++k)
      for (std::size_t l = k + 1; l < len; ++l) {
        if (!column_pair_rank2(f.c, k, l)) continue;
        q.b[0] = k;
        q.b[1] = l;
        std::size_t slot = 2;
        for (auto j : s) {
          if (j == k || j == l) continue;
          q.b[slot++] = j;
          if (slot == 5) break;
        }
        return q;
      }
    fail(ErrorCode::NoQuintuple, "rank(C) < 2");
  }
  if (s.size() == 4) {
    // boundary case: the columns outside the support of D have rank 2
    for (std::size_t k = 0; k < len; ++k) {
      if (std::binary_search(s.begin(), s.end(), k)) continue;
      for (std::size_t l = k + 1; l < len; ++l) {
        if (std::binary_search(s.begin(), s.end(), l) || !column_pair_rank2(f.c, k, l)) continue;
        q.b = {k, l, s[0], s[1], s[2]};
        return q;
      }
    }
    fail(ErrorCode::NoQuintuple, "rank(D) = 4 and the columns of C outside the support of D have rank < 2");
  }
  fail(ErrorCode::NoQuintuple, "rank(D) = " + std::to_string(s.size()) + " < 4");
}

namespace {

bool pairwise_distinct(const std::array<std::size_t, 5>& b) {
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      if (b[i] == b[j]) return false;
  return true;
}

}  // namespace

bool quintuple_holds(const QuintupleSelection& q, const Rank1Form& f) {
  if (q.kind != QuintupleKind::Rank1Quintuple || !pairwise_distinct(q.b)) return false;
  for (auto k : q.b)
    if (k >= f.xi.size()) return false;
  Rational prod = Rational(f.xi[q.b[0]]);
  for (std::size_t i = 1; i < 5; ++i) prod *= f.d[q.b[i]];
  return prod != 0;
}

bool quintuple_holds(const QuintupleSelection& q, const Rank2Form22& f) {
  if (q.kind != QuintupleKind::Rank2Quintuple || !pairwise_distinct(q.b)) return false;
  for (auto k : q.b)
    if (k >= f.c.cols()) return false;
  RationalMatrix pair(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    pair(i, 0) = Rational(f.c(i, q.b[0]));
    pair(i, 1) = Rational(f.c(i, q.b[1]));
  }
  const Rational prod = f.d[q.b[2]] * f.d[q.b[3]] * f.d[q.b[4]];
  return rank_rational(pair) == 2 && prod != 0;
}

}  // namespace qfp
