#pragma once

#include "qfp/matrix.hpp"
#include "qfp/structure.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace qfp {

enum class FormKind { Rank1, Case11, Case21, Case22 };
std::string_view to_string(FormKind k);

struct GeneratedInstance {
  FormKind kind = FormKind::Rank1;
  /// Parameters of the draw in the same canonical gauge the decomposers use
  /// (h = 0 when xi has fewer than two nonzero entries, primitive xi, Gamma
  /// pinned to B). With permute = false and h identifiable they compare equal
  /// to the decomposition output.
  StructureForm form;
  SymmetricIntMatrix matrix;
  std::size_t attempts = 0;
};

/// Deterministic in (kind, n, seed). Draws are rejected until the assembled
/// matrix is integral, has the intended off-diagonal rank and, for rank 2,
/// classifies as `kind`. Minimum n: 2 for Rank1, 4 for Case11, 5 for Case21/Case22.
GeneratedInstance generate_instance(FormKind kind, std::size_t n, std::uint64_t seed, bool permute = true);

/// Assembles an explicitly given form; NonIntegralAssembly on bad parameters.
SymmetricIntMatrix generate_from_form(const StructureForm& form);

/// Uniform symmetric matrix with entries in [lo, hi].
SymmetricIntMatrix random_symmetric(std::size_t n, long lo, long hi, std::mt19937_64& rng);

IndexPermutation random_permutation(std::size_t n, std::mt19937_64& rng);

}  // namespace qfp
