#pragma once

#include <cstdint>
#include <vector>

#include "bwtmerge/blocksort.hpp"
#include "bwtmerge/parallel/thread_pool.hpp"

namespace bwtmerge {

// Sub-block layout for parallel sorting: every block of `part` is refined into
// up to p near-equal pieces, with repetition info for the refined partition.
struct sub_block_plan {
  partition pieces;
  repetition_info info;
  std::vector<std::uint64_t> first_piece;  // per block, count() + 1 entries

  sub_block_plan(const text& t, const partition& part, std::uint64_t p);
};

// Sorts block i as its pieces in parallel, then merges the pieces in memory.
// The result carries bwt, gt, ISA samples and first_rank; sa and lcp are left
// empty. ranks[q] receives forward_rank of patterns[q] over the block, summed
// over the pieces.
block_sort_result parallel_sort_block(const text& t, const partition& part, const sub_block_plan& sub,
                                      std::uint64_t i, thread_pool& pool, std::uint64_t isa_rate,
                                      const std::vector<std::uint64_t>& patterns, std::vector<std::uint64_t>& ranks);

}  // namespace bwtmerge
