#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "hslope/real.hpp"

namespace hslope::cli {

/// fn(i) for i in [0, n) on up to `jobs` threads. Results come back in index
/// order; the first failing index rethrows. Workers run at the caller's
/// working precision.
template <class F>
auto parallel_map(std::size_t n, unsigned jobs, F fn) {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const Bits bits = working_precision();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    PrecisionScope scope(bits);
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(1u, jobs), n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace hslope::cli
