#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bwtmerge/merge.hpp"
#include "bwtmerge/text.hpp"

namespace bwtmerge {

// Binary merge tree over block indices; leaves are single blocks.
struct merge_tree {
  struct node {
    std::uint64_t lo = 0, hi = 0;  // blocks [lo, hi)
    int left = -1, right = -1;
    unsigned height = 0;  // 0 for leaves
    bool leaf() const { return left < 0; }
  };
  std::vector<node> nodes;
  int root = -1;

  unsigned depth() const { return nodes.empty() ? 0 : nodes[root].height; }
  std::uint64_t leaves() const { return nodes.empty() ? 0 : nodes[root].hi - nodes[root].lo; }
  // Nodes in post order (children before parents, left subtree first).
  std::vector<int> post_order() const;
};

// Left child over the ceil(k/2) leftmost blocks.
merge_tree build_tree(std::uint64_t nu);
// Chain merge(G0, merge(G1, ...)) over consecutive groups; each group is a
// balanced subtree. group_ends holds the exclusive end block of every group.
merge_tree build_chain_tree(const std::vector<std::uint64_t>& group_ends);

enum class run_mode { balanced, skewed, automatic };
const char* run_mode_name(run_mode m);

struct run_config {
  std::uint64_t memory_budget = 0;  // bytes; 0 = unlimited
  std::uint64_t block_size = 0;     // b'; 0 = derived from the budget
  run_mode mode = run_mode::automatic;
  unsigned threads = 1;
  std::uint64_t isa_rate = 32;
  std::uint64_t bwt_block = default_bwt_block;
  bool force_external_gap = false;
  bool keep_intermediates = false;
  // Skewed groups in blocks; 0 = as many blocks as the index budget allows.
  std::uint64_t skewed_group_blocks = 0;
  // Minimum backward-search steps per parallel worker.
  std::uint64_t min_worker_steps = 1024;
  gap_options gap;
};

// Tracked bytes per symbol of a block sort (SA, LCP, ISA, BWT, gt and the
// suffix sorter's working arrays at the typical 2L window).
inline constexpr std::uint64_t block_sort_bytes_per_symbol = 32;
// Fixed reserve for stream buffers and small tables.
inline constexpr std::uint64_t budget_reserve_bytes = 1 << 20;

std::uint64_t estimate_block_sort_bytes(std::uint64_t block_length);
// Smallest budget that can run with the given block-size override (0: none).
std::uint64_t minimal_budget(std::uint64_t block_size);

struct stage_time {
  std::string name;
  double seconds = 0;
};

struct run_report {
  std::uint64_t n = 0;
  unsigned sigma = 0;
  block_plan plan;
  run_mode mode = run_mode::balanced;  // mode actually used
  unsigned threads = 1;
  std::uint64_t tree_depth = 0;
  std::uint64_t groups = 0;
  bool power = false;
  std::uint64_t power_root = 0;
  std::uint64_t left_index_estimate = 0;  // largest left-side index, bytes
  std::uint64_t peak_tracked_bytes = 0;
  std::uint64_t max_working_length = 0;
  std::map<std::string, std::uint64_t> working_kinds;
  merge_stats merges;
  // Store traffic during the run, indexed by io_class.
  std::array<std::uint64_t, io_class_count> io_read{}, io_written{};
  std::vector<stage_time> stages;
  std::vector<std::string> warnings;
};

struct run_result {
  bwt_file_info bwt;     // final BWT in the store
  std::string isa;       // merged sampled ISA (empty on the power path)
  std::uint64_t first_rank = 0;
  run_report report;
};

// Whole pipeline: plan, repetition info, power shortcut, block sorting and
// bottom-up merging. Throws budget_error when the budget cannot hold one block
// sort and std::invalid_argument for an empty text.
run_result run(const text& t, const run_config& cfg, store& st);

// Decoded final BWT.
std::vector<symbol> run_bwt(const text& t, const run_config& cfg);

}  // namespace bwtmerge
