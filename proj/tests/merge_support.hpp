#pragma once

#include <doctest.h>

#include "bwtmerge/extio/gt_file.hpp"
#include "bwtmerge/merge.hpp"
#include "bwtmerge/periodicity.hpp"
#include "support.hpp"

namespace merge_support {

using namespace bwtmerge;
namespace orc = bwtmerge::oracle;


// Hand-built node from explicit streams.
inline node_result make_node(store& st, std::uint64_t begin, const std::string& bwt, std::vector<std::uint8_t> gt,
                      std::vector<isa_sample> isa, std::uint64_t first_rank, std::uint64_t rate = 1) {
  node_result r;
  r.begin = begin;
  r.end = begin + bwt.size();
  for (unsigned char c : bwt) ++r.hist[c];
  std::vector<symbol> s(bwt.begin(), bwt.end());
  auto name = st.unique_name("n");
  bwt_writer w(st, name, code_for(bwt.empty() ? std::vector<std::uint64_t>(256, 1) : r.hist), 4);
  w.append(s);
  r.bwt = bwt_parts::single(w.close());
  r.gt = st.unique_name("g");
  write_gt(st, r.gt, gt);
  r.isa = st.unique_name("i");
  write_isa(st, r.isa, rate, isa);
  r.first_rank = first_rank;
  return r;
}

inline std::string as_string(const std::vector<symbol>& v) { return {v.begin(), v.end()}; }

struct sorted_blocks {
  text t;
  partition part;
  repetition_info info;
  bool power = false;
  std::vector<block_sort_result> blocks;
};

inline sorted_blocks sort_all(const orc::bytes& v, std::vector<std::uint64_t> starts, std::uint64_t rate) {
  sorted_blocks s;
  s.t = text::from_bytes(v);
  s.part.n = v.size();
  s.part.starts = std::move(starts);
  s.info = compute_repetition_info(s.t, s.part);
  // Powers never reach the merge; uneven partitions can hide them from the per-block test.
  s.power = power_root(s.t).has_value();
  if (s.power) return s;
  for (std::uint64_t i = 0; i < s.part.count(); ++i) s.blocks.push_back(sort_block(s.t, s.part, i, s.info, rate));
  return s;
}

// Balanced merge of blocks [lo, hi).
inline node_result merge_range_of_blocks(store& st, const sorted_blocks& s, std::size_t lo, std::size_t hi,
                                  const merge_options& opt, merge_stats* stats) {
  if (hi - lo == 1) return make_leaf(st, s.t, s.blocks[lo], opt);
  std::size_t mid = lo + (hi - lo + 1) / 2;
  auto left = merge_range_of_blocks(st, s, lo, mid, opt, stats);
  auto right = merge_range_of_blocks(st, s, mid, hi, opt, stats);
  std::vector<const block_sort_result*> lb;
  for (std::size_t k = lo; k < mid; ++k) lb.push_back(&s.blocks[k]);
  auto start = forward_start_rank(s.t, lb, right.end - 1);
  return merge_nodes(st, s.t, left, right, start, opt, stats);
}

inline void check_node(store& st, const orc::bytes& v, const node_result& r, std::uint64_t rate) {
  const std::uint64_t n = v.size();
  REQUIRE(r.begin == 0);
  REQUIRE(r.end == n);
  CHECK(read_node_bwt(st, r) == orc::naive_bwt(v));
  auto sa = orc::naive_circular_sa(v);
  std::vector<isa_sample> want_isa;
  for (std::uint64_t k = 0; k < n; ++k) {
    if (sa[k] == 0) CHECK(r.first_rank == k);
    if (sa[k] % rate == 0) want_isa.emplace_back(sa[k], k);
  }
  CHECK(read_isa(st, r.isa) == want_isa);
  CHECK(read_gt(st, r.gt) == orc::naive_gt(v, 0, n));
}

}  // namespace merge_support
