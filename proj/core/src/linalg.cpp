#include "qfp/linalg.hpp"

#include "qfp/error.hpp"

#include <utility>

namespace qfp {

std::size_t rank_integer(std::vector<Integer> e, std::size_t rows, std::size_t cols) {
  if (e.size() != rows * cols) fail(ErrorCode::DimensionMismatch, "rank_integer size mismatch");
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return e[i * cols + j]; };
  std::size_t rank = 0;
  Integer prev_pivot = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
    const Integer p = at(rank, col);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const Integer f = at(i, col);
      for (std::size_t j = col + 1; j < cols; ++j) {
        // Bareiss step: the division by the previous pivot is exact.
        Integer v = p * at(i, j) - f * at(rank, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev_pivot.get_mpz_t());
        at(i, j) = std::move(v);
      }
      at(i, col) = 0;
    }
    prev_pivot = p;
    ++rank;
  }
  return rank;
}

std::size_t rank_rational(const RationalMatrix& m) {
  std::vector<Integer> e(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& v = m(i, j);
      e[i * m.cols() + j] = v.get_num() * (l / v.get_den());
    }
  }
  return rank_integer(std::move(e), m.rows(), m.cols());
}

std::size_t rank_of_submatrix(const SymmetricIntMatrix& a, const std::vector<std::size_t>& rows,
                              const std::vector<std::size_t>& cols) {
  std::vector<Integer> e;
  e.reserve(rows.size() * cols.size());
  for (std::size_t i : rows)
    for (std::size_t j : cols) e.push_back(a(i, j));
  return rank_integer(std::move(e), rows.size(), cols.size());
}

std::size_t rank(const SymmetricIntMatrix& a) {
  return rank_integer(a.entries(), a.n(), a.n());
}

LinearSolveResult solve_linear_system(const RationalMatrix& m, const std::vector<Rational>& b) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (b.size() != rows) fail(ErrorCode::DimensionMismatch, "right-hand side length mismatch");
  RationalMatrix aug(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
    aug(i, cols) = b[i];
  }
  LinearSolveResult out;
  out.pivot.assign(cols, false);
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && aug(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j <= cols; ++j) std::swap(aug(p, j), aug(r, j));
    const Rational inv = 1 / aug(r, c);
    for (std::size_t j = c; j <= cols; ++j) aug(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || aug(i, c) == 0) continue;
      const Rational f = aug(i, c);
      for (std::size_t j = c; j <= cols; ++j) aug(i, j) -= f * aug(r, j);
    }
    out.pivot[c] = true;
    pivot_col.push_back(c);
    ++r;
  }
  out.rank = r;
  out.consistent = true;
  for (std::size_t i = r; i < rows; ++i)
    if (aug(i, cols) != 0) out.consistent = false;
  out.solution.assign(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) out.solution[pivot_col[i]] = aug(i, cols);
  return out;
}

std::optional<std::vector<Rational>> solve_square(const RationalMatrix& m,
                                                  const std::vector<Rational>& b) {
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "solve_square needs a square matrix");
  auto res = solve_linear_system(m, b);
  if (res.rank < m.rows()) return std::nullopt;
  return std::move(res.solution);
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "determinant needs a square matrix");
  const std::size_t n = m.rows();
  RationalMatrix w = m;
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(p, j), w(c, j));
      det = -det;
    }
    det *= w(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (w(i, c) == 0) continue;
      const Rational f = w(i, c) / w(c, c);
      for (std::size_t j = c; j < n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  return det;
}

}  // namespace qfp
