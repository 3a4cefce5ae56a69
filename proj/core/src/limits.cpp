#include "qfp/limits.hpp"

#include <cstdlib>
#include <limits>
#include <string>

namespace qfp {

Limits default_limits() {
  Limits limits;
  if (const char* env = std::getenv("QFP_BUDGET")) {
    try {
      const auto value = std::stoull(env);
      if (value > 0) limits.budget = value;
    } catch (...) {
      // unparsable override: keep the default
    }
  }
  limits.threads = std::max(1u, std::thread::hardware_concurrency());
  return limits;
}

std::uint64_t saturating_pow(std::uint64_t base, unsigned exponent) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && out > kMax / base) return kMax;
    out *= base;
  }
  return out;
}

}  // namespace qfp
