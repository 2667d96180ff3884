#pragma once

// Static-stride parallel loop. Each worker inherits the caller's working
// precision; the first failing index (lowest i) is rethrown.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "ctlab/mp.hpp"

namespace ctlab {

inline unsigned worker_count(std::size_t n) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<unsigned>(std::min<std::size_t>(hw, n));
}

template <class F>
void parallel_for(std::size_t n, F&& f) {
  unsigned T = worker_count(n);
  if (T <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  long bits = working_bits();
  std::vector<std::exception_ptr> errs(n);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < T; ++t)
    pool.emplace_back([&, t] {
      PrecisionScope ps(bits);
      for (std::size_t i = t; i < n; i += T) {
        try {
          f(i);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace ctlab
