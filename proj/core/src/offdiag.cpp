#include "qfp/offdiag.hpp"

#include "qfp/error.hpp"
#include "qfp/linalg.hpp"

#include <algorithm>
#include <string>

namespace qfp {

namespace {

void require_dimension(const SymmetricIntMatrix& a) {
  if (a.n() < 2) {
    fail(ErrorCode::NoOffDiagonalSubmatrix,
         "off-diagonal rank needs n >= 2, got n = " + std::to_string(a.n()));
  }
}

// Candidate (value, J, I) beats the incumbent when its value is larger, or
// equal with a lexicographically smaller (J, I).
bool better(std::size_t value, const std::vector<std::size_t>& cols,
            const std::vector<std::size_t>& rows, const OffDiagReport& best, bool have_best) {
  if (!have_best || value > best.value) return true;
  if (value < best.value) return false;
  if (cols != best.witness_cols) return cols < best.witness_cols;
  return rows < best.witness_rows;
}

// Advances a sorted size-k combination of {0..n-1}; false when exhausted.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

OffDiagReport offdiag_rank_oracle(const SymmetricIntMatrix& a) {
  require_dimension(a);
  const std::size_t n = a.n();
  std::vector<unsigned> label(n, 0);  // 0: unused, 1: row set I, 2: column set J
  OffDiagReport best;
  bool have_best = false;
  std::vector<std::size_t> rows, cols;
  for (;;) {
    // odometer increment in base 3
    std::size_t pos = 0;
    while (pos < n && label[pos] == 2) label[pos++] = 0;
    if (pos == n) break;
    ++label[pos];

    rows.clear();
    cols.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == 1) rows.push_back(i);
      if (label[i] == 2) cols.push_back(i);
    }
    if (rows.empty() || cols.empty()) continue;
    const std::size_t r = rank_of_submatrix(a, rows, cols);
    if (better(r, cols, rows, best, have_best)) {
      best.value = r;
      best.witness_rows = rows;
      best.witness_cols = cols;
      have_best = true;
    }
  }
  return best;
}

OffDiagReport offdiag_rank(const SymmetricIntMatrix& a) {
  require_dimension(a);
  const std::size_t n = a.n();
  OffDiagReport best;
  bool have_best = false;
  std::vector<std::size_t> rows;
  rows.reserve(n);
  for (std::size_t size = 1; size < n; ++size) {
    const std::size_t bound = std::min(size, n - size);
    if (have_best && bound < best.value) continue;
    std::vector<std::size_t> cols(size);
    for (std::size_t i = 0; i < size; ++i) cols[i] = i;
    do {
      rows.clear();
      for (std::size_t i = 0, k = 0; i < n; ++i) {
        if (k < size && cols[k] == i) {
          ++k;
        } else {
          rows.push_back(i);
        }
      }
      const std::size_t r = rank_of_submatrix(a, rows, cols);
      if (better(r, cols, rows, best, have_best)) {
        best.value = r;
        best.witness_rows = rows;
        best.witness_cols = cols;
        have_best = true;
      }
    } while (next_combination(cols, n));
  }
  return best;
}

}  // namespace qfp
