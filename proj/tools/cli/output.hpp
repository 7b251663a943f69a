#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "stark/errors.hpp"

namespace stark::cli {

inline constexpr int kSchemaVersion = 1;

/// 17 significant digits: round-trips every double.
inline std::string num(double x) { return fmt::format("{:.17g}", x); }

/// Evaluates f(0..n-1) on a pool of workers; results are stored by index, so
/// the output order never depends on scheduling.
template <typename F>
auto parallel_map(int n, int workers, F&& f) -> std::vector<decltype(f(0))> {
  std::vector<decltype(f(0))> out(n);
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, std::max(n, 1));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < n; i = next++) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace stark::cli
