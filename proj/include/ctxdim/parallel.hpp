#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace ctxdim {

/// Worker count: CTXDIM_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline int thread_budget() {
  if (const char* env = std::getenv("CTXDIM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls f(k) for k in [0, count). Results must be written to per-index
/// slots so the caller's reduction does not depend on scheduling. The
/// exception of the smallest failing index is rethrown.
template <typename F>
void parallel_for(int count, F&& f) {
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) f(k);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto run = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        f(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ctxdim
