#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bwtmerge/memory.hpp"
#include "bwtmerge/periodicity.hpp"
#include "bwtmerge/text.hpp"

namespace bwtmerge {

// Finite string whose suffix order at offsets [0, L) equals the circular
// order of the block's suffixes. When a period-p run was shortened, `removed`
// symbols were cut from it and the run now breaks at offset q_prime.
struct working_string {
  enum class kind { short_window, long_window, reduced_run };

  tracked_vector<symbol> w;
  kind how = kind::short_window;
  std::uint64_t period = 0;   // period of the shortened run
  std::uint64_t removed = 0;  // multiple of period
  std::uint64_t q_prime = 0;  // break offset inside w
  std::uint64_t o = 0;        // break offset measured from the successor's start
};

struct block_sort_result {
  std::uint64_t start = 0;
  std::uint64_t length = 0;
  tracked_vector<std::uint32_t> sa;   // block-relative offsets in suffix order
  tracked_vector<std::uint32_t> lcp;  // stored values; see lcp_at
  std::uint64_t removed = 0;
  std::uint64_t q_prime = 0;
  std::uint64_t corr_offset = 0;  // meaningful when removed > 0
  tracked_vector<symbol> bwt;
  // gt bit for offset j >= 1 at index j - 1: suffix j greater than suffix 0.
  tracked_vector<std::uint8_t> gt;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> isa_samples;  // (position, rank), rank order
  std::uint64_t first_rank = 0;  // rank of the block's first suffix
  std::uint64_t working_length = 0;
  working_string::kind how = working_string::kind::short_window;

  std::uint64_t sa_at(std::uint64_t j) const { return start + sa[j]; }
  bool has_correction() const { return removed > 0; }
  std::vector<std::uint64_t> histogram() const;
};

working_string extend_block(const text& t, const block_plan& plan, std::uint64_t block_index,
                            const repetition_info& info);
working_string extend_block(const text& t, const partition& part, std::uint64_t block_index,
                            const repetition_info& info);

// Block lengths must differ by at most one (plans and their refinements);
// the run reduction relies on neighbours being about as long as the block.
block_sort_result sort_block(const text& t, const block_plan& plan, std::uint64_t block_index,
                             const repetition_info& info, std::uint64_t isa_rate = 32);
block_sort_result sort_block(const text& t, const partition& part, std::uint64_t block_index,
                             const repetition_info& info, std::uint64_t isa_rate = 32);

// Corrected LCP of ranks j-1 and j; 0 for j = 0.
std::uint64_t lcp_at(const block_sort_result& r, std::uint64_t j);

// Compare circular suffixes x and y; ties (equal infinite suffixes) go to the smaller index.
// Starts after `skip` known-equal symbols and reports the common prefix length (capped at n).
int compare_suffixes(const text& t, std::uint64_t x, std::uint64_t y, std::uint64_t skip, std::uint64_t* lcp_out);

// Number of the block's suffixes smaller than the circular suffix at y.
std::uint64_t forward_rank(const text& t, const block_sort_result& r, std::uint64_t y);

}  // namespace bwtmerge
