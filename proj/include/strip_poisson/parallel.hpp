#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace strip {

/// Worker cap shared by every parallel loop in the library; 0 means
/// hardware concurrency. Set once at startup (e.g. from --threads).
inline int& max_threads() {
  static int v = 0;
  return v;
}

inline void set_max_threads(int n) { max_threads() = n < 0 ? 0 : n; }

/// Static block partition over [begin, end). Tasks must write disjoint
/// state; reductions stay with the caller, so results are bitwise
/// independent of the worker count.
template <class Fn>
void parallel_for(int begin, int end, Fn&& fn) {
  const int n = end - begin;
  if (n <= 0) return;
  int workers = max_threads() > 0 ? max_threads()
                                  : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n);
  if (workers == 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  const int chunk = (n + workers - 1) / workers;
  auto run = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) fn(i);
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers) - 1);
  for (int t = 1; t < workers; ++t) {
    const int lo = begin + t * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo < hi) pool.emplace_back(run, lo, hi);
  }
  run(begin, std::min(end, begin + chunk));
  for (auto& th : pool) th.join();
}

}  // namespace strip
