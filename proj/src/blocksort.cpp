#include "bwtmerge/blocksort.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "bwtmerge/suffix_sort.hpp"

namespace bwtmerge {

namespace {

void append_window(tracked_vector<symbol>& w, const text& t, std::uint64_t from, std::uint64_t len) {
  std::uint64_t n = t.size();
  from %= n;
  while (len > 0) {
    std::uint64_t k = std::min(len, n - from);
    w.insert(w.end(), t.data() + from, t.data() + from + k);
    len -= k;
    from = 0;
  }
}

// In-block suffixes in sorted order with LCPs combined across filtered-out entries.
struct filtered_order {
  tracked_vector<std::uint32_t> off;
  tracked_vector<std::uint32_t> lcp;
  bool truncated = false;
};

filtered_order sort_and_filter(const tracked_vector<symbol>& w, std::uint64_t L) {
  auto sa = suffix_array(w);
  auto lcp = lcp_array(w, sa);
  filtered_order f;
  f.off.reserve(L);
  f.lcp.reserve(L);
  const std::uint64_t m = w.size();
  std::int32_t run = std::numeric_limits<std::int32_t>::max();
  for (std::size_t k = 0; k < sa.size(); ++k) {
    if (k > 0) run = std::min(run, lcp[k]);
    auto u = static_cast<std::uint64_t>(sa[k]);
    if (u >= L) continue;
    if (f.off.empty()) {
      f.lcp.push_back(0);
    } else {
      std::uint64_t v = f.off.back();
      f.lcp.push_back(static_cast<std::uint32_t>(run));
      // The comparison ran into the end of w before a real mismatch.
      if (static_cast<std::uint64_t>(run) == m - std::max(u, v)) f.truncated = true;
    }
    f.off.push_back(static_cast<std::uint32_t>(u));
    run = std::numeric_limits<std::int32_t>::max();
  }
  return f;
}

working_string short_window(const text& t, const partition& part, std::uint64_t i) {
  working_string ws;
  std::uint64_t L = part.length(i);
  ws.w.reserve(2 * L);
  append_window(ws.w, t, part.start(i), 2 * L);
  ws.how = working_string::kind::short_window;
  return ws;
}

// First x >= from with t~[x] != t~[x - p]; the run of period p must cover [from - p, from).
std::uint64_t find_break(const text& t, std::uint64_t from, std::uint64_t p) {
  std::uint64_t n = t.size();
  for (std::uint64_t x = from;; ++x) {
    if (t.circ(x) != t.circ(x - p)) return x;
    if (x - from > n + p) throw std::runtime_error("repetition scan exceeded the text length; the text is a power");
  }
}

working_string long_window(const text& t, const partition& part, std::uint64_t i, const repetition_info& info) {
  const std::uint64_t n = t.size();
  const std::uint64_t s = part.start(i), L = part.length(i);
  const std::uint64_t j = part.successor(i), L2 = part.length(j);
  const std::uint64_t P = info.propagated[j];
  working_string ws;
  if (!(info.generates[i] && P != repetition_info::none && P + 1 <= L)) {
    ws.how = working_string::kind::long_window;
    std::uint64_t len = L + L2 + 2 * (L - 1);
    ws.w.reserve(len);
    append_window(ws.w, t, s, len);
    return ws;
  }
  // The block generates period P: the run starts at s + L - P and continues
  // through every following block that propagates P.
  const std::uint64_t base = s + L;
  std::uint64_t from = base;
  std::uint64_t k = info.next_break[j];
  if (k != info.block_count()) from = base + (part.start(k) + n - part.start(j)) % n;
  const std::uint64_t q = find_break(t, from, P) - s;
  const std::uint64_t m = (q - (L - P)) / P;
  const std::uint64_t r = (2 * L + L2 - 2 + P + P - 1) / P;  // T = L - P + rP >= 3L + L2 - 2
  const std::uint64_t T = L - P + r * P;
  ws.how = working_string::kind::reduced_run;
  ws.period = P;
  ws.o = q - L;
  if (m > r) {
    ws.removed = (m - r) * P;
    ws.q_prime = q - ws.removed;
    ws.w.reserve(ws.q_prime + 1);
    append_window(ws.w, t, s, T);
    append_window(ws.w, t, s + T + ws.removed, q + 1 - T - ws.removed);
  } else {
    ws.q_prime = q;
    ws.w.reserve(q + 1);
    append_window(ws.w, t, s, q + 1);
  }
  return ws;
}

void check_bound(const working_string& ws, const partition& part) {
  std::uint64_t cap = 6 * part.max_length();
  if (ws.w.size() > cap)
    throw std::logic_error("working string of length " + std::to_string(ws.w.size()) + " exceeds 6b = " +
                           std::to_string(cap));
}

std::pair<working_string, filtered_order> prepare(const text& t, const partition& part, std::uint64_t i,
                                                  const repetition_info& info) {
  const std::uint64_t L = part.length(i);
  auto ws = short_window(t, part, i);
  check_bound(ws, part);
  auto f = sort_and_filter(ws.w, L);
  if (!f.truncated) return {std::move(ws), std::move(f)};
  ws = long_window(t, part, i, info);
  check_bound(ws, part);
  f = sort_and_filter(ws.w, L);
  if (f.truncated) throw std::logic_error("working string does not separate the block's suffixes");
  return {std::move(ws), std::move(f)};
}

}  // namespace

std::vector<std::uint64_t> block_sort_result::histogram() const {
  std::vector<std::uint64_t> h(256, 0);
  for (symbol a : bwt) ++h[a];
  return h;
}

working_string extend_block(const text& t, const block_plan& plan, std::uint64_t block_index,
                            const repetition_info& info) {
  return extend_block(t, to_partition(plan), block_index, info);
}

working_string extend_block(const text& t, const partition& part, std::uint64_t block_index,
                            const repetition_info& info) {
  return prepare(t, part, block_index, info).first;
}

block_sort_result sort_block(const text& t, const block_plan& plan, std::uint64_t block_index,
                             const repetition_info& info, std::uint64_t isa_rate) {
  return sort_block(t, to_partition(plan), block_index, info, isa_rate);
}

block_sort_result sort_block(const text& t, const partition& part, std::uint64_t block_index,
                             const repetition_info& info, std::uint64_t isa_rate) {
  if (block_index >= part.count()) throw std::out_of_range("sort_block: block index out of range");
  if (isa_rate == 0) throw std::invalid_argument("sort_block: isa rate must be positive");
  const std::uint64_t n = t.size();
  const std::uint64_t s = part.start(block_index), L = part.length(block_index);
  auto [ws, f] = prepare(t, part, block_index, info);

  block_sort_result r;
  r.start = s;
  r.length = L;
  r.removed = ws.removed;
  r.q_prime = ws.q_prime;
  r.corr_offset = ws.o;
  r.working_length = ws.w.size();
  r.how = ws.how;
  ws.w = {};
  r.sa = std::move(f.off);
  r.lcp = std::move(f.lcp);
  r.bwt.resize(L);
  r.gt.assign(L > 0 ? L - 1 : 0, 0);
  tracked_vector<std::uint32_t> isa(L);
  for (std::uint64_t k = 0; k < L; ++k) {
    std::uint64_t pos = s + r.sa[k];
    r.bwt[k] = t.circ(pos + n - 1);
    isa[r.sa[k]] = static_cast<std::uint32_t>(k);
    if (pos % isa_rate == 0) r.isa_samples.emplace_back(pos, k);
  }
  r.first_rank = isa[0];
  for (std::uint64_t x = 1; x < L; ++x) r.gt[x - 1] = isa[x] > isa[0] ? 1 : 0;
  return r;
}

std::uint64_t lcp_at(const block_sort_result& r, std::uint64_t j) {
  if (j >= r.length) throw std::out_of_range("lcp_at: rank out of range");
  if (j == 0) return 0;
  std::uint64_t stored = r.lcp[j];
  if (r.removed == 0) return stored;
  std::uint64_t maxoff = std::max(r.sa[j - 1], r.sa[j]);
  // Only pairs decided at the run's break reach q_prime.
  if (maxoff + stored == r.q_prime) return (r.length - maxoff) + r.corr_offset;
  return stored;
}

int compare_suffixes(const text& t, std::uint64_t x, std::uint64_t y, std::uint64_t skip, std::uint64_t* lcp_out) {
  const std::uint64_t n = t.size();
  std::uint64_t d = skip;
  std::uint64_t xi = (x + d) % n, yi = (y + d) % n;
  const symbol* p = t.data();
  for (; d < n; ++d) {
    if (p[xi] != p[yi]) {
      if (lcp_out) *lcp_out = d;
      return p[xi] < p[yi] ? -1 : 1;
    }
    if (++xi == n) xi = 0;
    if (++yi == n) yi = 0;
  }
  if (lcp_out) *lcp_out = n;
  return x < y ? -1 : (x > y ? 1 : 0);
}

std::uint64_t forward_rank(const text& t, const block_sort_result& r, std::uint64_t y) {
  // Invariant: suffixes at ranks <= lo are smaller, at ranks >= hi are not.
  std::int64_t lo = -1, hi = static_cast<std::int64_t>(r.length);
  std::uint64_t llcp = 0, rlcp = 0;
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    std::uint64_t l = 0;
    int c = compare_suffixes(t, r.sa_at(static_cast<std::uint64_t>(mid)), y, std::min(llcp, rlcp), &l);
    if (c < 0) {
      lo = mid;
      llcp = l;
    } else {
      hi = mid;
      rlcp = l;
    }
  }
  return static_cast<std::uint64_t>(hi);
}

}  // namespace bwtmerge
