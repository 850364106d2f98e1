// Rowwise-partitioned Gram product over a thread pool: each worker computes
// the local Gram of preassigned row blocks, and one global combine (a fixed
// binary tree over block indices) assembles the result.
//
// Reproducibility: the numerical result is a pure function of (A, block
// granularity).  Workers pick up blocks round-robin but every block's local
// product and the reduction order are fixed, so any worker count gives
// bitwise the same matrix.  There is exactly one global synchronization
// event per call (the join before the combine), matching the one-reduction
// structure this mirrors.

#pragma once

#include <utility>
#include <vector>

#include "mpsvd/types.hpp"

namespace mpsvd {

struct PartitionPlan {
  int workers = 1;
  // Contiguous half-open row intervals, one per logical block, covering
  // [0, m) in order with sizes differing by at most one.
  std::vector<std::pair<index_t, index_t>> row_ranges;
};

// blocks == 0 picks the default granularity: one block for a single worker
// (which makes the result bitwise equal to the dense gram), otherwise
// 2*workers rounded up to a power of two, clamped to m.
PartitionPlan make_partition_plan(index_t m, int workers, index_t blocks = 0);

struct GramRunStats {
  int sync_events = 0;
  index_t blocks = 0;
};

// M = sum over blocks of (A_k)^T A_k at Higher or Working precision (A's
// own).  1 <= workers <= m; workers beyond the block count idle harmlessly.
DenseMatrix partitioned_gram(const DenseMatrix& a, int workers,
                             index_t blocks = 0,
                             GramRunStats* stats = nullptr);

// Structural count of global synchronization events one partitioned_gram
// call performs for any valid worker count: always 1.
int sync_count(int workers);

}  // namespace mpsvd
