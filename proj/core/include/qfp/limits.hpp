#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace qfp {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000ULL;

/// Resource caps shared by every enumeration engine.
struct Limits {
  std::uint64_t budget = kDefaultBudget;  // max enumerated leaves
  unsigned threads = 1;
};

/// Default limits: budget from QFP_BUDGET when set, threads = hardware cores.
Limits default_limits();

/// Saturating a^e; returns UINT64_MAX on overflow.
std::uint64_t saturating_pow(std::uint64_t base, unsigned exponent);

/// Runs fn(i) for i in [0, tasks) on up to `threads` workers and returns the
/// results indexed by task. Merging in index order keeps floating-point
/// reductions independent of the thread count.
template <typename Fn>
auto parallel_map(std::size_t tasks, unsigned threads, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> out(tasks);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), tasks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace qfp
