#include "bwtmerge/parallel/parallel_block_sort.hpp"

#include "bwtmerge/extio/gt_file.hpp"
#include "bwtmerge/merge.hpp"

namespace bwtmerge {

sub_block_plan::sub_block_plan(const text& t, const partition& part, std::uint64_t p)
    : pieces(refine(part, p)), info(compute_repetition_info(t, pieces)) {
  first_piece.reserve(part.count() + 1);
  std::uint64_t k = 0;
  for (std::uint64_t i = 0; i < part.count(); ++i) {
    while (pieces.start(k) < part.start(i)) ++k;
    first_piece.push_back(k);
  }
  first_piece.push_back(pieces.count());
}

namespace {

node_result merge_pieces(store& st, const text& t, const std::vector<block_sort_result>& r, std::size_t lo,
                         std::size_t hi, const merge_options& opt) {
  if (hi - lo == 1) return make_leaf(st, t, r[lo], opt);
  const std::size_t mid = lo + (hi - lo + 1) / 2;
  auto left = merge_pieces(st, t, r, lo, mid, opt);
  auto right = merge_pieces(st, t, r, mid, hi, opt);
  std::vector<const block_sort_result*> lb;
  for (std::size_t k = lo; k < mid; ++k) lb.push_back(&r[k]);
  return merge_nodes(st, t, left, right, forward_start_rank(t, lb, right.end - 1), opt);
}

}  // namespace

block_sort_result parallel_sort_block(const text& t, const partition& part, const sub_block_plan& sub,
                                      std::uint64_t i, thread_pool& pool, std::uint64_t isa_rate,
                                      const std::vector<std::uint64_t>& patterns, std::vector<std::uint64_t>& ranks) {
  const std::uint64_t first = sub.first_piece.at(i), count = sub.first_piece.at(i + 1) - first;
  std::vector<block_sort_result> r(count);
  std::vector<std::vector<std::uint64_t>> local(count, std::vector<std::uint64_t>(patterns.size(), 0));
  pool.run(count, [&](std::uint64_t k) {
    r[k] = sort_block(t, sub.pieces, first + k, sub.info, isa_rate);
    for (std::size_t q = 0; q < patterns.size(); ++q) local[k][q] = forward_rank(t, r[k], patterns[q]);
  });
  ranks.assign(patterns.size(), 0);
  for (auto& l : local)
    for (std::size_t q = 0; q < l.size(); ++q) ranks[q] += l[q];
  if (count == 1) return std::move(r[0]);

  // Pieces are merged with in-memory gap arrays inside a private in-memory store.
  memory_store st;
  merge_options opt;
  opt.path = gap_path::memory;
  opt.isa_rate = isa_rate;
  auto node = merge_pieces(st, t, r, 0, count, opt);

  block_sort_result out;
  out.start = part.start(i);
  out.length = part.length(i);
  auto bwt = read_node_bwt(st, node);
  out.bwt.assign(bwt.begin(), bwt.end());
  auto gt = read_gt(st, node.gt);
  out.gt.assign(gt.begin(), gt.end());
  out.isa_samples = read_isa(st, node.isa);
  out.first_rank = node.first_rank;
  for (auto& x : r) {
    out.working_length = std::max(out.working_length, x.working_length);
    if (x.how != working_string::kind::short_window) out.how = x.how;
  }
  return out;
}

}  // namespace bwtmerge
