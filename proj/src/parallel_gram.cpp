#include "mpsvd/parallel_gram.hpp"

#include <algorithm>
#include <thread>

namespace mpsvd {

namespace {

// Smallest power of two >= x (x >= 1).
index_t next_pow2(index_t x) {
  index_t p = 1;
  while (p < x) p <<= 1;
  return p;
}

// Local Gram of rows [r0, r1): upper triangle by ascending-k dots, mirrored.
// For a single block spanning [0, m) this is entry-for-entry the dense gram.
template <typename T>
void block_gram(const T* a, index_t m, index_t n, index_t r0, index_t r1,
                T* out) {
  for (index_t j = 0; j < n; ++j) {
    const T* cj = a + static_cast<std::size_t>(j) * m;
    for (index_t i = 0; i <= j; ++i) {
      const T* ci = a + static_cast<std::size_t>(i) * m;
      T s = T(0);
      for (index_t k = r0; k < r1; ++k) s += ci[k] * cj[k];
      out[static_cast<std::size_t>(j) * n + i] = s;
      out[static_cast<std::size_t>(i) * n + j] = s;
    }
  }
}

template <typename T>
void run_blocks(const T* a, index_t m, index_t n, const PartitionPlan& plan,
                std::vector<std::vector<T>>& slots) {
  const index_t nb = static_cast<index_t>(plan.row_ranges.size());
  auto work = [&](index_t first) {
    for (index_t b = first; b < nb; b += plan.workers)
      block_gram(a, m, n, plan.row_ranges[static_cast<std::size_t>(b)].first,
                 plan.row_ranges[static_cast<std::size_t>(b)].second,
                 slots[static_cast<std::size_t>(b)].data());
  };
  if (plan.workers <= 1) {
    work(0);
    return;
  }
  const index_t spawn = std::min<index_t>(plan.workers, nb);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(spawn));
  for (index_t w = 0; w < spawn; ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();  // the single global synchronization point
}

}  // namespace

PartitionPlan make_partition_plan(index_t m, int workers, index_t blocks) {
  if (m < 1) throw InvalidArgument("partitioned gram needs at least one row");
  if (workers < 1 || static_cast<index_t>(workers) > m)
    throw InvalidArgument("worker count must be in [1, m]");
  if (blocks == 0)
    blocks = workers == 1 ? 1 : std::min<index_t>(m, next_pow2(2 * workers));
  if (blocks < 1 || blocks > m)
    throw InvalidArgument("block count must be in [1, m]");

  PartitionPlan plan;
  plan.workers = workers;
  plan.row_ranges.reserve(static_cast<std::size_t>(blocks));
  const index_t base = m / blocks, extra = m % blocks;
  index_t row = 0;
  for (index_t b = 0; b < blocks; ++b) {
    const index_t len = base + (b < extra ? 1 : 0);
    plan.row_ranges.emplace_back(row, row + len);
    row += len;
  }
  return plan;
}

DenseMatrix partitioned_gram(const DenseMatrix& a, int workers, index_t blocks,
                             GramRunStats* stats) {
  const index_t m = a.rows(), n = a.cols();
  if (n < 1) throw InvalidArgument("partitioned gram of an empty matrix");
  const auto plan = make_partition_plan(m, workers, blocks);
  const index_t nb = static_cast<index_t>(plan.row_ranges.size());

  DenseMatrix out(n, n, a.precision());
  auto compute = [&](auto* data, auto* res) {
    using T = std::remove_const_t<std::remove_pointer_t<decltype(data)>>;
    std::vector<std::vector<T>> slots(
        static_cast<std::size_t>(nb),
        std::vector<T>(static_cast<std::size_t>(n) * n, T(0)));
    run_blocks(data, m, n, plan, slots);
    // Fixed binary reduction tree over block indices: (0,1),(2,3),... then
    // (0,2),(4,6),... — the shape depends only on the block count, so the
    // result is invariant under the worker count.
    for (index_t width = 1; width < nb; width *= 2)
      for (index_t i = 0; i + width < nb; i += 2 * width) {
        T* dst = slots[static_cast<std::size_t>(i)].data();
        const T* src = slots[static_cast<std::size_t>(i + width)].data();
        for (std::size_t k = 0; k < static_cast<std::size_t>(n) * n; ++k)
          dst[k] += src[k];
      }
    std::copy(slots[0].begin(), slots[0].end(), res);
  };
  if (a.precision() == Precision::Working)
    compute(a.fptr(), out.fptr());
  else
    compute(a.dptr(), out.dptr());

  if (stats) *stats = GramRunStats{1, nb};
  return out;
}

int sync_count(int workers) {
  if (workers < 1) throw InvalidArgument("worker count must be positive");
  return 1;
}

}  // namespace mpsvd
