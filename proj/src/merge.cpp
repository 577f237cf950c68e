#include "bwtmerge/merge.hpp"

#include <algorithm>
#include <optional>

#include "bwtmerge/extio/gt_file.hpp"

namespace bwtmerge {

huffman_code code_for(const std::vector<std::uint64_t>& hist) { return huffman_code::from_histogram(hist); }

node_result make_leaf(store& st, const text& t, const block_sort_result& r, const merge_options& opt) {
  (void)t;
  node_result out;
  out.begin = r.start;
  out.end = r.start + r.length;
  for (symbol a : r.bwt) ++out.hist[a];
  bwt_writer w(st, st.unique_name("leaf-bwt"), code_for(out.hist), opt.bwt_block);
  w.append(r.bwt);
  out.bwt = bwt_parts::single(w.close());
  out.gt = st.unique_name("leaf-gt");
  gt_writer g(st, out.gt);
  for (auto b : r.gt) g.push(b != 0);
  g.close();
  out.isa = st.unique_name("leaf-isa");
  isa_writer iw(st, out.isa, opt.isa_rate);
  for (auto [pos, rank] : r.isa_samples)
    if (pos % opt.isa_rate == 0) iw.push(pos, rank);
  iw.close();
  out.first_rank = r.first_rank;
  return out;
}

wavelet_tree build_index(store& st, const node_result& left) {
  auto wt = wavelet_tree::begin(code_for(left.hist), left.hist);
  multi_bwt_decoder dec(st, left.bwt, 0);
  while (!dec.at_end()) {
    auto [a, k] = dec.next_run(left.size());
    for (std::uint64_t j = 0; j < k; ++j) wt.push_back(a);
  }
  return wt;
}

std::uint64_t forward_start_rank(const text& t, const std::vector<const block_sort_result*>& left_blocks,
                                 std::uint64_t y) {
  std::uint64_t r = 0;
  for (auto* b : left_blocks) r += forward_rank(t, *b, y);
  return r;
}

backward_search::backward_search(const text& t, const node_result& left, const wavelet_tree& wt)
    : first_rank(left.first_rank), index(&wt) {
  const std::uint64_t n = t.size();
  before_left = t[left.begin == 0 ? n - 1 : left.begin - 1];
  last_left = t[left.end - 1];
  // First symbols of the left suffixes: BWT symbols, minus t~[a-1], plus t[m-1].
  std::array<std::uint64_t, 256> first{};
  for (unsigned a = 0; a < 256; ++a) first[a] = left.hist[a];
  --first[before_left];
  ++first[last_left];
  C[0] = 0;
  for (unsigned a = 0; a < 256; ++a) C[a + 1] = C[a] + first[a];
}

gap_outcome compute_gap(store& st, const text& t, const node_result& left, const node_result& right,
                        const wavelet_tree& wt, std::uint64_t start_rank, const merge_options& opt,
                        merge_stats* stats) {
  if (left.end != right.begin) throw std::invalid_argument("compute_gap: nodes are not adjacent");
  if (start_rank > left.size()) throw std::out_of_range("compute_gap: start rank beyond the left size");
  const backward_search bs(t, left, wt);
  const std::uint64_t len = left.size() + 1;

  gap_outcome out;
  out.reversed_gt.push_back(st.unique_name("gt-rev"));
  gt_writer gw(st, out.reversed_gt.back());
  gt_file rgt(st, right.gt);
  gt_reverse_reader rev(rgt, rgt.size());

  std::optional<gap_accumulator> acc;
  if (opt.path == gap_path::memory) {
    out.gap.length = len;
    out.gap.values.assign(len, 0);
  } else {
    acc.emplace(st, len, right.size(), opt.gap);
  }

  std::uint64_t R = start_rank;
  for (std::uint64_t r = right.end; r-- > right.begin;) {
    if (acc) acc->increment(R);
    else ++out.gap.values[R];
    gw.push(R > bs.first_rank);
    if (r > right.begin) R = bs.step(t[r - 1], R, rev.next());
  }
  gw.close();

  if (acc) {
    out.gap = acc->finalize();
    note_external_gap(st, *acc, out.gap, stats);
  } else {
    out.gap.sum = right.size();
    if (stats) ++stats->memory_gap_nodes;
  }
  if (stats) stats->backward_steps += right.size();
  return out;
}

void note_external_gap(store& st, const gap_accumulator& acc, const gap_array& g, merge_stats* stats) {
  if (!stats) return;
  stats->gap_spills += acc.spills();
  stats->gap_merges += acc.merges();
  stats->peak_pending_gap_bits = std::max(stats->peak_pending_gap_bits, acc.peak_pending_bits());
  ++stats->external_gap_nodes;
  gap_file f(st, g.file);
  const auto bits = gap_encoded_bits(f);
  const double bound = gap_size_bound_bits(f.kind(), f.length(), f.sum(), f.nonzeros());
  stats->gap_encoded_bits += bits;
  stats->gap_bound_bits += bound;
  if (double(bits) > bound) ++stats->gap_bound_violations;
}

std::vector<merge_cursor> locate_outputs(store& st, const gap_array& g, const std::vector<std::uint64_t>& positions) {
  std::vector<merge_cursor> out;
  out.reserve(positions.size());
  if (positions.empty()) return out;
  if (!std::is_sorted(positions.begin(), positions.end()))
    throw std::invalid_argument("locate_outputs: positions must be sorted");
  const std::uint64_t b_l = g.length - 1;
  if (positions.back() > b_l + g.sum) throw std::out_of_range("locate_outputs: position beyond the output");
  gap_reader gr(st, g, 0);
  std::size_t k = 0;
  std::uint64_t acc = 0, right = 0;
  for (std::uint64_t i = 0; i <= b_l && k < positions.size(); ++i) {
    const std::uint64_t gi = gr.next();
    // Slot i covers output positions [acc, acc + gi] before left element i.
    while (k < positions.size() && positions[k] - acc <= gi) {
      std::uint64_t in = positions[k] - acc;
      out.push_back({i, right + in, in});
      ++k;
    }
    acc += gi + 1;
    right += gi;
  }
  return out;
}

merge_cursor locate_output(store& st, const gap_array& g, std::uint64_t P) { return locate_outputs(st, g, {P})[0]; }

merge_part merge_range(store& st, const node_result& left, const node_result& right, const gap_array& g,
                       merge_cursor from, std::uint64_t count, const huffman_code& code, const merge_options& opt,
                       const std::string& bwt_name, const std::string& isa_name) {
  const std::uint64_t b_l = left.size();
  if (g.length != b_l + 1) throw std::invalid_argument("merge_range: gap array does not match the left node");
  if (from.offset() + count > b_l + right.size()) throw std::out_of_range("merge_range: range beyond the output");

  bwt_writer w(st, bwt_name, code, opt.bwt_block);
  isa_writer iw(st, isa_name, opt.isa_rate);
  multi_bwt_decoder ld(st, left.bwt, from.left), rd(st, right.bwt, from.right);

  isa_reader lisa(st, left.isa), risa(st, right.isa);
  lisa.seek_rank(from.left);
  risa.seek_rank(from.right);
  std::optional<isa_sample> ls, rs;
  if (!lisa.at_end()) ls = lisa.next();
  if (!risa.at_end()) rs = risa.next();

  gap_reader gr(st, g, from.left);
  std::uint64_t slot = gr.next() - from.in_slot;
  std::uint64_t i = from.left, rr = from.right, p = from.offset(), rem = count;
  while (rem > 0) {
    std::uint64_t take = std::min(slot, rem);
    const std::uint64_t rr_end = rr + take;
    while (rs && rs->second < rr_end) {
      iw.push(rs->first, p + (rs->second - rr));
      rs = risa.at_end() ? std::nullopt : std::optional(risa.next());
    }
    p += take;
    rem -= take;
    while (take > 0) {
      auto [a, k] = rd.next_run(take);
      w.push_run(a, k);
      take -= k;
    }
    rr = rr_end;
    if (rem == 0) break;
    // rem > 0 here implies a left element remains in the range.
    w.push(ld.next());
    if (ls && ls->second == i) {
      iw.push(ls->first, p);
      ls = lisa.at_end() ? std::nullopt : std::optional(lisa.next());
    }
    ++p;
    --rem;
    ++i;
    if (i <= b_l) slot = gr.next();
  }
  merge_part out;
  out.bwt = w.close();
  out.isa = isa_name;
  out.isa_count = iw.close();
  return out;
}

std::string merge_gt(store& st, const node_result& left, const std::vector<std::string>& reversed_gt) {
  std::string name = st.unique_name("gt");
  gt_writer w(st, name);
  {
    gt_file lf(st, left.gt);
    gt_reader lr(lf, 0);
    for (std::uint64_t k = 0; k < lf.size(); ++k) w.push(lr.next());
  }
  for (auto it = reversed_gt.rbegin(); it != reversed_gt.rend(); ++it) {
    gt_file f(st, *it);
    gt_reverse_reader r(f, f.size());
    for (std::uint64_t k = 0; k < f.size(); ++k) w.push(r.next());
  }
  w.close();
  return name;
}

std::uint64_t merged_first_rank(store& st, const node_result& left, const gap_array& g) {
  gap_reader gr(st, g, 0);
  std::uint64_t s = 0;
  for (std::uint64_t x = 0; x <= left.first_rank; ++x) s += gr.next();
  return left.first_rank + s;
}

node_result merge_nodes(store& st, const text& t, const node_result& left, const node_result& right,
                        std::uint64_t start_rank, const merge_options& opt, merge_stats* stats) {
  gap_outcome go;
  {
    auto wt = build_index(st, left);
    if (stats) stats->peak_index_bytes = std::max<std::uint64_t>(stats->peak_index_bytes, wt.bytes());
    go = compute_gap(st, t, left, right, wt, start_rank, opt, stats);
  }
  node_result out;
  out.begin = left.begin;
  out.end = right.end;
  for (unsigned a = 0; a < 256; ++a) out.hist[a] = left.hist[a] + right.hist[a];
  auto part = merge_range(st, left, right, go.gap, {}, out.size(), code_for(out.hist), opt, st.unique_name("bwt"),
                          st.unique_name("isa"));
  out.bwt = bwt_parts::single(part.bwt);
  out.isa = part.isa;
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

void remove_node(store& st, const node_result& r) {
  remove_bwt_parts(st, r.bwt);
  if (!r.gt.empty()) st.remove(r.gt);
  if (!r.isa.empty()) st.remove(r.isa);
}

std::vector<symbol> read_node_bwt(store& st, const node_result& r) { return read_bwt_parts(st, r.bwt); }

}  // namespace bwtmerge
