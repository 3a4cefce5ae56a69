#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace qfp {

using Integer = mpz_class;
/// Always canonical: lowest terms, positive denominator, zero stored as 0/1.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p", "-p" or "p/q" into a canonical rational.
std::optional<Rational> parse_rational(const std::string& text);

/// "p/q" for non-integers, "p" otherwise.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

bool is_integral(const Rational& r);

/// Converts when the value fits, otherwise std::nullopt.
std::optional<std::int64_t> to_int64(const Integer& z);

Integer lcm_of_denominators(const std::vector<Rational>& values);

/// Dense row-major matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Rational>& entries() const { return entries_; }

  RationalMatrix transpose() const;
  RationalMatrix submatrix(const std::vector<std::size_t>& row_idx,
                           const std::vector<std::size_t>& col_idx) const;
  std::vector<Rational> multiply(const std::vector<Rational>& v) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

}  // namespace qfp
