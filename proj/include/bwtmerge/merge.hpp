#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bwtmerge/blocksort.hpp"
#include "bwtmerge/extio/isa_file.hpp"
#include "bwtmerge/extio/multi_file_index.hpp"
#include "bwtmerge/gaparray.hpp"
#include "bwtmerge/succinct/wavelet_tree.hpp"
#include "bwtmerge/text.hpp"

namespace bwtmerge {

// Sorted suffixes of the text interval [begin, end): BWT (circular
// predecessors), gt bits for positions begin+1 .. end-1, sampled ISA and the
// rank of the first suffix.
struct node_result {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  bwt_parts bwt;
  std::vector<std::uint64_t> hist = std::vector<std::uint64_t>(256, 0);
  std::string gt;
  std::string isa;
  std::uint64_t first_rank = 0;

  std::uint64_t size() const { return end - begin; }
};

enum class gap_path { external, memory };

struct merge_options {
  gap_path path = gap_path::external;
  gap_options gap;
  std::uint64_t isa_rate = 32;
  std::uint64_t bwt_block = default_bwt_block;
  bool keep_inputs = false;
  bool keep_gap = false;  // leave the final external gap file in the store
};

struct merge_stats {
  std::uint64_t merges = 0;
  std::uint64_t backward_steps = 0;
  std::uint64_t gap_spills = 0;
  std::uint64_t gap_merges = 0;
  std::uint64_t peak_pending_gap_bits = 0;
  std::uint64_t peak_index_bytes = 0;
  std::uint64_t memory_gap_nodes = 0;
  std::uint64_t external_gap_nodes = 0;
  // Final external gap files: encoded size against the coding bound.
  std::uint64_t gap_encoded_bits = 0;
  double gap_bound_bits = 0;
  std::uint64_t gap_bound_violations = 0;
};

// Folds the accumulator counters and the final gap file into stats.
void note_external_gap(store& st, const gap_accumulator& acc, const gap_array& g, merge_stats* stats);

huffman_code code_for(const std::vector<std::uint64_t>& hist);

// Writes a sorted block as a leaf.
node_result make_leaf(store& st, const text& t, const block_sort_result& r, const merge_options& opt);

// Rank index over a node's BWT, read back from its files.
wavelet_tree build_index(store& st, const node_result& left);

// Number of suffixes of the base blocks smaller than the suffix at y,
// summed over the blocks (the left side of a merge).
std::uint64_t forward_start_rank(const text& t, const std::vector<const block_sort_result*>& left_blocks,
                                 std::uint64_t y);

// Constant part of the backward-search step for one merge.
struct backward_search {
  std::array<std::uint64_t, 257> C{};  // left suffixes starting with a smaller symbol
  std::uint64_t first_rank = 0;        // ISA of the left node's first suffix
  symbol before_left = 0;              // t~[a-1]
  symbol last_left = 0;                // t~[m-1]
  const wavelet_tree* index = nullptr;

  backward_search(const text& t, const node_result& left, const wavelet_tree& wt);

  // Rank of suffix r-1 among the left suffixes, given R = rank of suffix r and
  // whether suffix r exceeds the right node's first suffix.
  std::uint64_t step(symbol c, std::uint64_t R, bool right_gt) const {
    std::uint64_t v = C[c] + index->occ(c, R);
    if (c == before_left && first_rank < R) --v;
    if (c == last_left && right_gt) ++v;
    return v;
  }
};

// Output of the backward search over the right node.
struct gap_outcome {
  gap_array gap;
  // Merged gt bits for right positions, written from end-1 down to begin (one file per worker range).
  std::vector<std::string> reversed_gt;
};

// Runs the backward search of right against left starting from rank start_rank of suffix right.end-1.
gap_outcome compute_gap(store& st, const text& t, const node_result& left, const node_result& right,
                        const wavelet_tree& wt, std::uint64_t start_rank, const merge_options& opt,
                        merge_stats* stats = nullptr);

// Position in the merged output. Output order is G[0] right suffixes, left
// suffix 0, G[1] right suffixes, left suffix 1, ..., G[b_l] right suffixes.
struct merge_cursor {
  std::uint64_t left = 0;     // left elements before the position (= current gap slot)
  std::uint64_t right = 0;    // right elements before it
  std::uint64_t in_slot = 0;  // right elements of slot `left` before it
  std::uint64_t offset() const { return left + right; }
  bool operator==(const merge_cursor&) const = default;
};

// Cursors of the sorted output positions, found in one pass over the gap array.
std::vector<merge_cursor> locate_outputs(store& st, const gap_array& g, const std::vector<std::uint64_t>& positions);
merge_cursor locate_output(store& st, const gap_array& g, std::uint64_t P);

// Emits `count` merged BWT symbols starting at `from` into one BWT file and
// the ISA samples of those output positions into one ISA file.
struct merge_part {
  bwt_file_info bwt;
  std::string isa;
  std::uint64_t isa_count = 0;
};
merge_part merge_range(store& st, const node_result& left, const node_result& right, const gap_array& g,
                       merge_cursor from, std::uint64_t count, const huffman_code& code, const merge_options& opt,
                       const std::string& bwt_name, const std::string& isa_name);

// Concatenate left gt, then the right bits recovered from the reversed files.
std::string merge_gt(store& st, const node_result& left, const std::vector<std::string>& reversed_gt);

// ISA_L(a) + sum of G[0..ISA_L(a)].
std::uint64_t merged_first_rank(store& st, const node_result& left, const gap_array& g);

// Full serial merge of two adjacent nodes.
node_result merge_nodes(store& st, const text& t, const node_result& left, const node_result& right,
                        std::uint64_t start_rank, const merge_options& opt, merge_stats* stats = nullptr);

void remove_node(store& st, const node_result& r);

// Final product accessors.
std::vector<symbol> read_node_bwt(store& st, const node_result& r);

}  // namespace bwtmerge
