#pragma once

#include <cstdint>
#include <vector>

#include "bwtmerge/merge.hpp"
#include "bwtmerge/parallel/thread_pool.hpp"

namespace bwtmerge {

// Backward-search workers for a right side of b_r suffixes: at most p, and at
// least min_work steps each.
std::uint64_t gap_workers(std::uint64_t b_r, std::uint64_t p, std::uint64_t min_work);

// Worker start positions x_j = end-1-j*ceil(b_r/workers), descending. Worker j
// handles x_j down to x_{j+1}+1 (the last one down to begin). May return fewer
// starts than requested when the stride leaves later workers empty.
std::vector<std::uint64_t> gap_worker_starts(std::uint64_t begin, std::uint64_t end, std::uint64_t workers);

// Backward searches from every start in parallel; start_ranks[j] is the rank of
// suffix x_j among the left suffixes. Equal to compute_gap.
gap_outcome parallel_compute_gap(store& st, const text& t, const node_result& left, const node_result& right,
                                 const wavelet_tree& wt, const std::vector<std::uint64_t>& start_ranks,
                                 const merge_options& opt, thread_pool& pool, merge_stats* stats = nullptr);

struct work_split {
  std::vector<merge_cursor> starts;
  std::vector<std::uint64_t> counts;
};

// Output split into at most p parts at multiples of d.
work_split split_for_merge(store& st, const gap_array& g, std::uint64_t b_l, std::uint64_t b_r, std::uint64_t p,
                           std::uint64_t d);

// Parallel merge of two adjacent nodes; the BWT stays split into d-aligned parts.
node_result parallel_merge_nodes(store& st, const text& t, const node_result& left, const node_result& right,
                                 const std::vector<std::uint64_t>& start_ranks, const merge_options& opt,
                                 thread_pool& pool, merge_stats* stats = nullptr);

// Glue a node's BWT parts into one file.
bwt_file_info single_bwt_file(store& st, node_result& r);

}  // namespace bwtmerge
