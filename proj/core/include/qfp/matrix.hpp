#pragma once

#include "qfp/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace qfp {

/// Exact symmetric integer matrix; symmetry is checked on construction and
/// the first offending (i, j) is named in the NotSymmetric error.
class SymmetricIntMatrix {
 public:
  SymmetricIntMatrix() = default;
  SymmetricIntMatrix(std::size_t n, std::vector<Integer> entries);
  SymmetricIntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static SymmetricIntMatrix identity(std::size_t n);
  static SymmetricIntMatrix diagonal(const std::vector<long>& diag);

  std::size_t n() const { return n_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<Integer>& entries() const { return entries_; }

  RationalMatrix to_rational() const;
  /// Row-major int64 copy; throws Overflow if any entry does not fit.
  std::vector<std::int64_t> to_int64() const;
  Integer max_abs_entry() const;

  friend bool operator==(const SymmetricIntMatrix&, const SymmetricIntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Integer> entries_;
};

/// Dense row-major integer matrix used for the integer blocks of the
/// structure forms.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<Integer>& entries() const { return entries_; }

  RationalMatrix to_rational() const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// Bijection on {0, ..., n-1}. Conjugation uses the convention
/// (P^T A P)(i, j) = A(image[i], image[j]).
class IndexPermutation {
 public:
  IndexPermutation() = default;
  explicit IndexPermutation(std::vector<std::size_t> image);

  static IndexPermutation identity(std::size_t n);

  std::size_t size() const { return image_.size(); }
  std::size_t operator[](std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& image() const { return image_; }

  IndexPermutation inverse() const;

  friend bool operator==(const IndexPermutation&, const IndexPermutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

SymmetricIntMatrix conjugate_by_permutation(const SymmetricIntMatrix& a, const IndexPermutation& p);

/// Builds the integer matrix A with (P^T A P) = block, i.e. the inverse of
/// conjugation applied to an exact rational block form. Throws
/// NonIntegralAssembly if an entry is not integral, NotSymmetric if the block
/// form is not symmetric.
SymmetricIntMatrix undo_permutation(const RationalMatrix& block, const IndexPermutation& p);

}  // namespace qfp
