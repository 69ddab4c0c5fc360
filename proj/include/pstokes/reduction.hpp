#ifndef PSTOKES_REDUCTION_HPP
#define PSTOKES_REDUCTION_HPP

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace pstokes {

// Compensated accumulator (Kahan). The volatile-free formulation is safe
// because the build does not enable -ffast-math.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Fixed-topology pairwise tree over block results. The topology depends only
// on the number of blocks, never on thread count or scheduling.
inline double pairwise_tree_reduce(std::vector<double> blocks) {
  if (blocks.empty()) return 0.0;
  while (blocks.size() > 1) {
    std::size_t half = (blocks.size() + 1) / 2;
    for (std::size_t i = 0; 2 * i + 1 < blocks.size(); ++i)
      blocks[i] = blocks[2 * i] + blocks[2 * i + 1];
    if (blocks.size() % 2 == 1) blocks[half - 1] = blocks.back();
    blocks.resize(half);
  }
  return blocks[0];
}

// Runs fn(block_index) for every block on the given number of worker threads.
// Work is pulled from an atomic counter; results must be written to
// per-block storage so the outcome is independent of scheduling.
inline void parallel_for_blocks(std::size_t n_blocks, int threads,
                                const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n_blocks <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      fn(b);
    }
  };
  std::vector<std::thread> pool;
  const int n_workers = std::min<int>(threads, static_cast<int>(n_blocks));
  pool.reserve(n_workers);
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace pstokes

#endif  // PSTOKES_REDUCTION_HPP
