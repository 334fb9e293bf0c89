#ifndef ISOSET_DETAIL_PARALLEL_HPP
#define ISOSET_DETAIL_PARALLEL_HPP

#include <atomic>
#include <thread>
#include <vector>

namespace isoset::detail {

inline thread_local bool insideParallelWorker = false;

/// Runs f(i) for i in [0, n) on a small worker pool.  Results must be
/// written to pre-sized, index-addressed storage so the output order is
/// independent of scheduling.  Nested calls run serially.
template <class F>
void parallelFor(int n, F&& f) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = static_cast<int>(std::min<unsigned>(hw ? hw : 1, static_cast<unsigned>(n)));
  if (workers <= 1 || n <= 1 || insideParallelWorker) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      insideParallelWorker = true;
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace isoset::detail

#endif
