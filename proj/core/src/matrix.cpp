#include "qfp/matrix.hpp"

#include "qfp/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace qfp {

SymmetricIntMatrix::SymmetricIntMatrix(std::size_t n, std::vector<Integer> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ == 0) fail(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
  if (entries_.size() != n_ * n_) {
    fail(ErrorCode::DimensionMismatch,
         "expected " + std::to_string(n_ * n_) + " entries, got " + std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (entries_[i * n_ + j] != entries_[j * n_ + i]) {
        fail(ErrorCode::NotSymmetric, "matrix is not symmetric at (" + std::to_string(i) + ", " +
                                          std::to_string(j) + ")");
      }
}

SymmetricIntMatrix::SymmetricIntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t n = rows.size();
  std::vector<Integer> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) fail(ErrorCode::DimensionMismatch, "matrix literal is not square");
    for (long v : row) entries.emplace_back(v);
  }
  *this = SymmetricIntMatrix(n, std::move(entries));
}

SymmetricIntMatrix SymmetricIntMatrix::identity(std::size_t n) {
  std::vector<Integer> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return SymmetricIntMatrix(n, std::move(e));
}

SymmetricIntMatrix SymmetricIntMatrix::diagonal(const std::vector<long>& diag) {
  const std::size_t n = diag.size();
  std::vector<Integer> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return SymmetricIntMatrix(n, std::move(e));
}

RationalMatrix SymmetricIntMatrix::to_rational() const {
  RationalMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = Rational((*this)(i, j));
  return m;
}

std::vector<std::int64_t> SymmetricIntMatrix::to_int64() const {
  std::vector<std::int64_t> out;
  out.reserve(entries_.size());
  for (const auto& z : entries_) {
    const auto v = qfp::to_int64(z);
    if (!v) fail(ErrorCode::Overflow, "matrix entry " + z.get_str() + " does not fit in 64 bits");
    out.push_back(*v);
  }
  return out;
}

Integer SymmetricIntMatrix::max_abs_entry() const {
  Integer m = 0;
  for (const auto& z : entries_) {
    Integer a = abs(z);
    if (a > m) m = a;
  }
  return m;
}

RationalMatrix IntegerMatrix::to_rational() const {
  RationalMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = Rational((*this)(i, j));
  return m;
}

IndexPermutation::IndexPermutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t v : image_) {
    if (v >= image_.size() || seen[v]) {
      fail(ErrorCode::InvalidArgument, "permutation image is not a bijection");
    }
    seen[v] = true;
  }
}

IndexPermutation IndexPermutation::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), 0);
  return IndexPermutation(std::move(image));
}

IndexPermutation IndexPermutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return IndexPermutation(std::move(inv));
}

SymmetricIntMatrix conjugate_by_permutation(const SymmetricIntMatrix& a, const IndexPermutation& p) {
  const std::size_t n = a.n();
  if (p.size() != n) {
    fail(ErrorCode::DimensionMismatch, "permutation length " + std::to_string(p.size()) +
                                           " does not match dimension " + std::to_string(n));
  }
  std::vector<Integer> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = a(p[i], p[j]);
  return SymmetricIntMatrix(n, std::move(e));
}

SymmetricIntMatrix undo_permutation(const RationalMatrix& block, const IndexPermutation& p) {
  const std::size_t n = block.rows();
  if (block.cols() != n || p.size() != n) {
    fail(ErrorCode::DimensionMismatch, "block form and permutation sizes disagree");
  }
  std::vector<Integer> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = block(i, j);
      if (!is_integral(v)) {
        fail(ErrorCode::NonIntegralAssembly, "assembled entry (" + std::to_string(i) + ", " +
                                                 std::to_string(j) + ") = " + to_string(v) +
                                                 " is not an integer");
      }
      e[p[i] * n + p[j]] = v.get_num();
    }
  return SymmetricIntMatrix(n, std::move(e));
}

}  // namespace qfp
