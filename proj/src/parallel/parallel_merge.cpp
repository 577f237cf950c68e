#include "bwtmerge/parallel/parallel_merge.hpp"

#include <algorithm>
#include <optional>

#include "bwtmerge/extio/gt_file.hpp"
#include "bwtmerge/parallel/parallel_ops.hpp"

namespace bwtmerge {

std::uint64_t gap_workers(std::uint64_t b_r, std::uint64_t p, std::uint64_t min_work) {
  if (b_r == 0) return 1;
  std::uint64_t by_work = (b_r + std::max<std::uint64_t>(min_work, 1) - 1) / std::max<std::uint64_t>(min_work, 1);
  return std::max<std::uint64_t>(1, std::min({p, by_work, b_r}));
}

std::vector<std::uint64_t> gap_worker_starts(std::uint64_t begin, std::uint64_t end, std::uint64_t workers) {
  const std::uint64_t b_r = end - begin;
  if (b_r == 0) return {};
  workers = std::clamp<std::uint64_t>(workers, 1, b_r);
  const std::uint64_t c = (b_r + workers - 1) / workers;
  std::vector<std::uint64_t> x;
  for (std::uint64_t j = 0; j * c < b_r; ++j) x.push_back(end - 1 - j * c);
  return x;
}

gap_outcome parallel_compute_gap(store& st, const text& t, const node_result& left, const node_result& right,
                                 const wavelet_tree& wt, const std::vector<std::uint64_t>& start_ranks,
                                 const merge_options& opt, thread_pool& pool, merge_stats* stats) {
  if (start_ranks.size() <= 1) return compute_gap(st, t, left, right, wt, start_ranks.empty() ? 0 : start_ranks[0], opt, stats);
  auto x = gap_worker_starts(right.begin, right.end, start_ranks.size());
  if (x.size() != start_ranks.size()) throw std::invalid_argument("parallel_compute_gap: start ranks do not match the workers");
  const backward_search bs(t, left, wt);
  const std::uint64_t len = left.size() + 1, W = x.size();

  gap_outcome out;
  for (std::uint64_t j = 0; j < W; ++j) out.reversed_gt.push_back(st.unique_name("gt-rev"));
  gt_file rgt(st, right.gt);

  std::optional<gap_accumulator> acc;
  std::optional<shared_gap_buffer> shared;
  std::optional<thread_pool> sort_pool;
  if (opt.path == gap_path::memory) {
    out.gap.length = len;
    out.gap.values.assign(len, 0);
  } else {
    acc.emplace(st, len, right.size(), opt.gap);
    sort_pool.emplace(pool.size());
    acc->set_sorter([&](std::span<std::uint64_t> d, std::uint64_t bound, tracked_vector<std::uint64_t>& s) {
      parallel_radix_sort(d, bound, s, *sort_pool);
    });
    shared.emplace(*acc);
  }

  pool.run(W, [&](std::uint64_t j) {
    const std::uint64_t lo = j + 1 < W ? x[j + 1] + 1 : right.begin;
    gt_writer gw(st, out.reversed_gt[j]);
    gt_reverse_reader rev(rgt, x[j] - right.begin);
    std::uint64_t R = start_ranks[j];
    for (std::uint64_t r = x[j] + 1; r-- > lo;) {
      if (shared) shared->increment(R);
      else std::atomic_ref<std::uint32_t>(out.gap.values[R]).fetch_add(1, std::memory_order_relaxed);
      gw.push(R > bs.first_rank);
      if (r > lo) R = bs.step(t[r - 1], R, rev.next());
    }
    gw.close();
  });

  if (acc) {
    shared->finish();
    out.gap = acc->finalize();
    note_external_gap(st, *acc, out.gap, stats);
  } else {
    out.gap.sum = right.size();
    if (stats) ++stats->memory_gap_nodes;
  }
  if (stats) stats->backward_steps += right.size();
  return out;
}

work_split split_for_merge(store& st, const gap_array& g, std::uint64_t b_l, std::uint64_t b_r, std::uint64_t p,
                           std::uint64_t d) {
  if (g.length != b_l + 1) throw std::invalid_argument("split_for_merge: gap array does not match the left size");
  const std::uint64_t total = b_l + b_r;
  p = std::max<std::uint64_t>(p, 1);
  const std::uint64_t per = std::max<std::uint64_t>(1, (total + p * d - 1) / (p * d)) * d;
  std::vector<std::uint64_t> at;
  for (std::uint64_t P = 0; P < total; P += per) at.push_back(P);
  if (at.empty()) at.push_back(0);
  work_split w;
  w.starts = locate_outputs(st, g, at);
  for (std::size_t k = 0; k < at.size(); ++k) w.counts.push_back((k + 1 < at.size() ? at[k + 1] : total) - at[k]);
  return w;
}

node_result parallel_merge_nodes(store& st, const text& t, const node_result& left, const node_result& right,
                                 const std::vector<std::uint64_t>& start_ranks, const merge_options& opt,
                                 thread_pool& pool, merge_stats* stats) {
  gap_outcome go;
  {
    auto wt = parallel_wavelet(st, left.bwt, left.hist, code_for(left.hist), pool);
    if (stats) stats->peak_index_bytes = std::max<std::uint64_t>(stats->peak_index_bytes, wt.bytes());
    go = parallel_compute_gap(st, t, left, right, wt, start_ranks, opt, pool, stats);
  }
  node_result out;
  out.begin = left.begin;
  out.end = right.end;
  for (unsigned a = 0; a < 256; ++a) out.hist[a] = left.hist[a] + right.hist[a];
  const auto code = code_for(out.hist);
  auto split = split_for_merge(st, go.gap, left.size(), right.size(), pool.size(), opt.bwt_block);
  const std::size_t k = split.starts.size();
  std::vector<merge_part> parts(k);
  std::vector<std::string> bwt_names(k), isa_names(k);
  for (std::size_t j = 0; j < k; ++j) {
    bwt_names[j] = st.unique_name("bwt");
    isa_names[j] = st.unique_name("isa");
  }
  pool.run(k, [&](std::uint64_t j) {
    parts[j] = merge_range(st, left, right, go.gap, split.starts[j], split.counts[j], code, opt, bwt_names[j],
                           isa_names[j]);
  });
  std::vector<bwt_file_info> infos;
  for (auto& p : parts) infos.push_back(p.bwt);
  out.bwt = make_bwt_parts(infos);
  if (k == 1) {
    out.isa = isa_names[0];
  } else {
    out.isa = st.unique_name("isa");
    concat_isa_files(st, isa_names, out.isa, opt.isa_rate);
    for (auto& n : isa_names) st.remove(n);
  }
  out.gt = merge_gt(st, left, go.reversed_gt);
  out.first_rank = merged_first_rank(st, left, go.gap);
  if (!go.gap.in_memory() && !opt.keep_gap) st.remove(go.gap.file);
  for (auto& f : go.reversed_gt) st.remove(f);
  if (!opt.keep_inputs) {
    remove_node(st, left);
    remove_node(st, right);
  }
  if (stats) ++stats->merges;
  return out;
}

bwt_file_info single_bwt_file(store& st, node_result& r) {
  if (r.bwt.names.size() == 1) return bwt_file(st, r.bwt.names[0]).info();
  auto name = st.unique_name("bwt");
  auto info = concat_bwt_files(st, r.bwt.names, name);
  remove_bwt_parts(st, r.bwt);
  r.bwt = bwt_parts::single(info);
  return info;
}

}  // namespace bwtmerge
