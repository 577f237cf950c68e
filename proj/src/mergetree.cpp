#include "bwtmerge/mergetree.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <optional>

#include "bwtmerge/blocksort.hpp"
#include "bwtmerge/parallel/parallel_block_sort.hpp"
#include "bwtmerge/parallel/parallel_merge.hpp"
#include "bwtmerge/periodicity.hpp"

namespace bwtmerge {

std::vector<int> merge_tree::post_order() const {
  std::vector<int> out;
  if (root < 0) return out;
  std::vector<std::pair<int, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    if (expanded || nodes[v].leaf()) {
      out.push_back(v);
      continue;
    }
    stack.push_back({v, true});
    stack.push_back({nodes[v].right, false});
    stack.push_back({nodes[v].left, false});
  }
  return out;
}

namespace {

int add_balanced(merge_tree& t, std::uint64_t lo, std::uint64_t hi) {
  merge_tree::node n;
  n.lo = lo;
  n.hi = hi;
  if (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    n.left = add_balanced(t, lo, mid);
    n.right = add_balanced(t, mid, hi);
    n.height = 1 + std::max(t.nodes[n.left].height, t.nodes[n.right].height);
  }
  t.nodes.push_back(n);
  return static_cast<int>(t.nodes.size()) - 1;
}

}  // namespace

merge_tree build_tree(std::uint64_t nu) {
  if (nu == 0) throw std::invalid_argument("build_tree: no blocks");
  merge_tree t;
  t.root = add_balanced(t, 0, nu);
  return t;
}

merge_tree build_chain_tree(const std::vector<std::uint64_t>& group_ends) {
  if (group_ends.empty()) throw std::invalid_argument("build_chain_tree: no groups");
  merge_tree t;
  std::vector<int> groups;
  std::uint64_t lo = 0;
  for (auto e : group_ends) {
    if (e <= lo) throw std::invalid_argument("build_chain_tree: empty group");
    groups.push_back(add_balanced(t, lo, e));
    lo = e;
  }
  int acc = groups.back();
  for (std::size_t g = groups.size() - 1; g-- > 0;) {
    merge_tree::node n;
    n.lo = t.nodes[groups[g]].lo;
    n.hi = t.nodes[acc].hi;
    n.left = groups[g];
    n.right = acc;
    n.height = 1 + std::max(t.nodes[n.left].height, t.nodes[n.right].height);
    t.nodes.push_back(n);
    acc = static_cast<int>(t.nodes.size()) - 1;
  }
  t.root = acc;
  return t;
}

const char* run_mode_name(run_mode m) {
  switch (m) {
    case run_mode::balanced: return "balanced";
    case run_mode::skewed: return "skewed";
    case run_mode::automatic: return "auto";
  }
  return "?";
}

std::uint64_t estimate_block_sort_bytes(std::uint64_t block_length) {
  return block_sort_bytes_per_symbol * block_length;
}

std::uint64_t minimal_budget(std::uint64_t block_size) {
  return budget_reserve_bytes + estimate_block_sort_bytes(std::max<std::uint64_t>(block_size, 2));
}

namespace {

using clock_type = std::chrono::steady_clock;

class stage_timer {
 public:
  explicit stage_timer(run_report& r) : r_(r), t0_(clock_type::now()) {}
  void mark(const std::string& name) {
    auto now = clock_type::now();
    r_.stages.push_back({name, std::chrono::duration<double>(now - t0_).count()});
    t0_ = now;
  }

 private:
  run_report& r_;
  clock_type::time_point t0_;
};

const char* kind_name(working_string::kind k) {
  switch (k) {
    case working_string::kind::short_window: return "short_window";
    case working_string::kind::long_window: return "long_window";
    case working_string::kind::reduced_run: return "reduced_run";
  }
  return "?";
}

std::uint64_t ceil_log2(std::uint64_t x) {
  std::uint64_t k = 0;
  while ((1ULL << k) < x) ++k;
  return k;
}

// Per-block symbol histograms in one pass over the text.
std::vector<std::array<std::uint64_t, 256>> block_histograms(const text& t, const partition& part) {
  std::vector<std::array<std::uint64_t, 256>> h(part.count());
  for (std::uint64_t i = 0; i < part.count(); ++i) {
    h[i].fill(0);
    for (std::uint64_t x = part.start(i); x < part.start(i) + part.length(i); ++x) ++h[i][t[x]];
  }
  return h;
}

std::uint64_t index_estimate(const std::vector<std::array<std::uint64_t, 256>>& h, std::uint64_t lo,
                             std::uint64_t hi) {
  std::vector<std::uint64_t> sum(256, 0);
  for (std::uint64_t i = lo; i < hi; ++i)
    for (unsigned a = 0; a < 256; ++a) sum[a] += h[i][a];
  return estimate_wavelet_bytes(sum);
}

run_result power_path(const text& t, std::uint64_t q, const run_config& cfg, store& st, run_report report) {
  const std::uint64_t k = t.size() / q;
  std::vector<symbol> root(t.bytes().begin(), t.bytes().begin() + static_cast<std::ptrdiff_t>(q));
  auto sub = run(text::from_bytes(std::move(root)), cfg, st);
  std::vector<std::uint64_t> hist(256, 0);
  for (symbol a : t.bytes()) ++hist[a];
  run_result out;
  {
    bwt_file f(st, sub.bwt.name);
    bwt_decoder dec(f, 0);
    bwt_writer w(st, st.unique_name("bwt"), code_for(hist), cfg.bwt_block);
    while (!dec.at_end()) w.push_run(dec.next(), k);
    out.bwt = w.close();
  }
  st.remove(sub.bwt.name);
  if (!sub.isa.empty()) st.remove(sub.isa);
  report.merges = sub.report.merges;
  report.tree_depth = sub.report.tree_depth;
  report.plan = sub.report.plan;
  report.max_working_length = sub.report.max_working_length;
  out.report = std::move(report);
  return out;
}

}  // namespace

run_result run(const text& t, const run_config& cfg, store& st) {
  const std::uint64_t n = t.size();
  if (n == 0) throw std::invalid_argument("input must be non-empty");
  if (cfg.threads == 0) throw std::invalid_argument("thread count must be positive");
  if (cfg.isa_rate == 0) throw std::invalid_argument("isa sampling rate must be positive");
  if (cfg.bwt_block == 0) throw std::invalid_argument("bwt block size must be positive");

  auto& tracker = memory_tracker::global();
  const std::uint64_t base = tracker.current();
  tracker.reset_peak();

  std::array<std::uint64_t, io_class_count> read0{}, written0{};
  for (unsigned c = 0; c < io_class_count; ++c) {
    read0[c] = st.counters().total_read(io_class(c));
    written0[c] = st.counters().total_written(io_class(c));
  }
  auto finish = [&](run_report& r) {
    r.peak_tracked_bytes = tracker.peak() > base ? tracker.peak() - base : 0;
    for (unsigned c = 0; c < io_class_count; ++c) {
      r.io_read[c] = st.counters().total_read(io_class(c)) - read0[c];
      r.io_written[c] = st.counters().total_written(io_class(c)) - written0[c];
    }
  };

  run_report report;
  report.n = n;
  report.sigma = t.sigma();
  report.threads = cfg.threads;
  stage_timer timer(report);

  const std::uint64_t budget = cfg.memory_budget;
  if (budget && budget < minimal_budget(cfg.block_size))
    throw budget_error("memory budget of " + std::to_string(budget) + " bytes cannot hold one block sort",
                       minimal_budget(cfg.block_size));
  const std::uint64_t usable = budget ? budget - budget_reserve_bytes : 0;

  if (auto q = power_root(t)) {
    report.power = true;
    report.power_root = *q;
    timer.mark("power_check");
    const auto t1 = clock_type::now();
    auto res = power_path(t, *q, cfg, st, std::move(report));
    res.report.stages.push_back({"power_shortcut", std::chrono::duration<double>(clock_type::now() - t1).count()});
    finish(res.report);
    return res;
  }
  timer.mark("power_check");

  // Block size: the override wins; otherwise the largest block whose sort fits.
  std::uint64_t b = cfg.block_size;
  if (b == 0) b = budget ? usable * 9 / 10 / block_sort_bytes_per_symbol : (1ULL << 20);
  b = std::clamp<std::uint64_t>(b, 1, n);
  report.plan = plan_blocks(n, b);
  const partition part = to_partition(report.plan);
  const std::uint64_t nu = part.count();
  const auto info = compute_repetition_info(t, part);
  timer.mark("plan");

  // Tree shape.
  const std::uint64_t index_target = budget ? usable * 7 / 10 : UINT64_MAX;
  const auto hists = block_histograms(t, part);
  const std::uint64_t half = (nu + 1) / 2;
  const std::uint64_t balanced_estimate = nu > 1 ? index_estimate(hists, 0, half) : 0;
  run_mode mode = cfg.mode;
  if (mode == run_mode::automatic) mode = balanced_estimate <= index_target ? run_mode::balanced : run_mode::skewed;
  report.mode = mode;
  merge_tree tree;
  if (mode == run_mode::balanced) {
    tree = build_tree(nu);
    report.groups = 1;
    report.left_index_estimate = balanced_estimate;
  } else {
    std::vector<std::uint64_t> ends;
    std::uint64_t lo = 0;
    while (lo < nu) {
      std::uint64_t hi = lo + 1;
      if (cfg.skewed_group_blocks) {
        hi = std::min(nu, lo + cfg.skewed_group_blocks);
      } else if (budget) {
        while (hi < nu && index_estimate(hists, lo, hi + 1) <= index_target) ++hi;
      }
      report.left_index_estimate = std::max(report.left_index_estimate, index_estimate(hists, lo, hi));
      ends.push_back(hi);
      lo = hi;
    }
    tree = build_chain_tree(ends);
    report.groups = ends.size();
  }
  report.tree_depth = tree.depth();
  if (budget && report.left_index_estimate > index_target)
    report.warnings.push_back("left-side index estimate " + std::to_string(report.left_index_estimate) +
                              " bytes exceeds the index share of the budget");

  // Start-rank patterns: one per backward-search worker of every merge.
  std::optional<thread_pool> pool;
  if (cfg.threads > 1) pool.emplace(cfg.threads);
  struct merge_job {
    std::vector<std::uint64_t> patterns, ranks;
  };
  std::vector<merge_job> jobs(tree.nodes.size());
  std::vector<std::vector<int>> left_of(nu);
  for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
    const auto& nd = tree.nodes[v];
    if (nd.leaf()) continue;
    const auto& r = tree.nodes[nd.right];
    const std::uint64_t rb = part.start(r.lo), re = part.start(r.hi - 1) + part.length(r.hi - 1);
    std::uint64_t workers = cfg.threads > 1 ? gap_workers(re - rb, cfg.threads, cfg.min_worker_steps) : 1;
    jobs[v].patterns = gap_worker_starts(rb, re, workers);
    jobs[v].ranks.assign(jobs[v].patterns.size(), 0);
    for (std::uint64_t i = nd.lo; i < tree.nodes[nd.left].hi; ++i) left_of[i].push_back(static_cast<int>(v));
  }

  // Sort every block, collect its start-rank contributions and spill it as a leaf.
  merge_options opt;
  opt.isa_rate = cfg.isa_rate;
  opt.bwt_block = cfg.bwt_block;
  opt.keep_inputs = cfg.keep_intermediates;
  opt.keep_gap = cfg.keep_intermediates;
  opt.gap = cfg.gap;
  std::optional<sub_block_plan> sub;
  if (pool) sub.emplace(t, part, cfg.threads);
  std::vector<node_result> results(tree.nodes.size());
  std::vector<int> leaf_node(nu, -1);
  for (std::size_t v = 0; v < tree.nodes.size(); ++v)
    if (tree.nodes[v].leaf()) leaf_node[tree.nodes[v].lo] = static_cast<int>(v);
  for (std::uint64_t i = 0; i < nu; ++i) {
    std::vector<std::uint64_t> patterns, ranks;
    for (int v : left_of[i]) patterns.insert(patterns.end(), jobs[v].patterns.begin(), jobs[v].patterns.end());
    block_sort_result r;
    if (pool) {
      r = parallel_sort_block(t, part, *sub, i, *pool, cfg.isa_rate, patterns, ranks);
    } else {
      r = sort_block(t, part, i, info, cfg.isa_rate);
      for (auto y : patterns) ranks.push_back(forward_rank(t, r, y));
    }
    std::size_t q = 0;
    for (int v : left_of[i])
      for (auto& x : jobs[v].ranks) x += ranks[q++];
    report.max_working_length = std::max(report.max_working_length, r.working_length);
    ++report.working_kinds[kind_name(r.how)];
    results[leaf_node[i]] = make_leaf(st, t, r, opt);
  }
  timer.mark("block_sort");

  // Bottom-up merging.
  const std::uint64_t memory_height = pool ? ceil_log2(cfg.threads) : 0;
  for (int v : tree.post_order()) {
    const auto& nd = tree.nodes[v];
    if (nd.leaf()) continue;
    node_result& L = results[nd.left];
    node_result& R = results[nd.right];
    merge_options o = opt;
    o.path = gap_path::external;
    if (!cfg.force_external_gap && pool && nd.height <= memory_height) {
      std::uint64_t need = estimate_wavelet_bytes(L.hist) + 4 * (L.size() + 1);
      if (!budget || need <= usable) o.path = gap_path::memory;
    }
    if (pool)
      results[v] = parallel_merge_nodes(st, t, L, R, jobs[v].ranks, o, *pool, &report.merges);
    else
      results[v] = merge_nodes(st, t, L, R, jobs[v].ranks[0], o, &report.merges);
    L = {};
    R = {};
  }
  timer.mark("merge");

  run_result out;
  node_result& root = results[tree.root];
  out.bwt = single_bwt_file(st, root);
  out.isa = root.isa;
  out.first_rank = root.first_rank;
  if (!root.gt.empty() && !cfg.keep_intermediates) st.remove(root.gt);
  timer.mark("finalize");
  finish(report);
  out.report = std::move(report);
  return out;
}

std::vector<symbol> run_bwt(const text& t, const run_config& cfg) {
  memory_store st;
  auto r = run(t, cfg, st);
  return read_bwt(st, r.bwt.name);
}

}  // namespace bwtmerge
