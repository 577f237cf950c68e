// Acceptance run: one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "bwtmerge/extio/bwt_file.hpp"
#include "bwtmerge/extio/gap_file.hpp"
#include "bwtmerge/extio/gt_file.hpp"
#include "bwtmerge/extio/isa_file.hpp"
#include "bwtmerge/mergetree.hpp"
#include "bwtmerge/oracle.hpp"
#include "bwtmerge/parallel/parallel_block_sort.hpp"
#include "bwtmerge/parallel/parallel_merge.hpp"
#include "bwtmerge/parallel/parallel_ops.hpp"
#include "bwtmerge/periodicity.hpp"

using namespace bwtmerge;
namespace orc = bwtmerge::oracle;

namespace {

// Pinned tolerances and sizes.
constexpr unsigned c1_max_n = 12;
constexpr int c2_texts = 1000;
constexpr std::uint64_t c2_max_n = 10000;
constexpr std::uint64_t c3_max_n = 100000;
constexpr std::uint64_t c3_working_factor = 6;
constexpr unsigned c4_max_n = 14;
constexpr int c5_arrays = 10000;
constexpr std::uint64_t c8_n = 50ULL << 20;
constexpr double c8_budget_fraction = 0.25;
constexpr double c8_slack = 0.10;
constexpr double c8_max_seconds = 30 * 60;
constexpr std::uint64_t c8_trend_n = 8ULL << 20;
constexpr double c8_trend_limit = 2.3;
constexpr int c8_trend_runs = 3;
constexpr double c9_trend_tolerance = 2.0;
constexpr std::uint64_t c9_blocks = 16;

std::mt19937_64 rng(20240611);

std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

orc::bytes random_text(std::uint64_t n, unsigned sigma) {
  orc::bytes v(n);
  for (auto& c : v) c = static_cast<std::uint8_t>('a' + uniform(0, sigma - 1));
  return v;
}

orc::bytes binary_text(std::uint64_t code, unsigned n) {
  orc::bytes v(n);
  for (unsigned i = 0; i < n; ++i) v[i] = ((code >> i) & 1) ? 'b' : 'a';
  return v;
}

orc::bytes fibonacci(std::uint64_t n) {
  std::string a = "a", b = "ab";
  while (b.size() < n) {
    std::string c = b + a;
    a = std::move(b);
    b = std::move(c);
  }
  return orc::bytes(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n));
}

orc::bytes repeat(const orc::bytes& root, std::uint64_t k) {
  orc::bytes v;
  for (std::uint64_t j = 0; j < k; ++j) v.insert(v.end(), root.begin(), root.end());
  return v;
}

std::vector<std::uint8_t> object_bytes(store& st, const std::string& name) {
  auto src = st.open(name, io_class::misc);
  std::vector<std::uint8_t> v(src->size());
  src->read_at(0, v.data(), v.size());
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures of a criterion.
struct failures {
  std::uint64_t count = 0;
  std::ostringstream first;
  void add(const std::string& what) {
    if (count++ < 3) first << (count > 1 ? "; " : "") << what;
  }
  std::string text() const { return count ? std::to_string(count) + " failures: " + first.str() : ""; }
};

std::string label(const orc::bytes& v) {
  if (v.size() <= 16) return "'" + std::string(v.begin(), v.end()) + "'";
  return "n=" + std::to_string(v.size());
}

run_config pipeline(std::uint64_t b, run_mode mode) {
  run_config c;
  c.block_size = b;
  c.mode = mode;
  c.isa_rate = 4;
  c.bwt_block = 64;
  return c;
}

// ---------------------------------------------------------------------------

outcome criterion1() {
  failures f;
  std::uint64_t runs = 0;
  for (unsigned n = 2; n <= c1_max_n; ++n)
    for (std::uint64_t code = 0; code < (1ULL << n); ++code) {
      auto v = binary_text(code, n);
      auto want = orc::naive_bwt(v);
      auto t = text::from_bytes(v);
      for (std::uint64_t b = 2; b <= n; ++b)
        for (auto mode : {run_mode::balanced, run_mode::skewed}) {
          ++runs;
          try {
            if (run_bwt(t, pipeline(b, mode)) != want)
              f.add(label(v) + " b'=" + std::to_string(b) + " " + run_mode_name(mode));
          } catch (const std::exception& e) {
            f.add(label(v) + ": " + e.what());
          }
        }
    }
  return {f.count == 0, std::to_string(runs) + " runs" + (f.count ? ", " + f.text() : "")};
}

outcome criterion2() {
  failures f;
  const unsigned sigmas[] = {2, 4, 26};
  const run_mode modes[] = {run_mode::balanced, run_mode::skewed, run_mode::automatic};
  for (int k = 0; k < c2_texts; ++k) {
    auto v = random_text(uniform(2, c2_max_n), sigmas[k % 3]);
    std::uint64_t b = uniform(2, v.size());
    auto mode = modes[(k / 3) % 3];
    try {
      if (run_bwt(text::from_bytes(v), pipeline(b, mode)) != orc::naive_bwt(v))
        f.add(label(v) + " b'=" + std::to_string(b) + " " + run_mode_name(mode));
    } catch (const std::exception& e) {
      f.add(label(v) + ": " + e.what());
    }
  }
  return {f.count == 0, std::to_string(c2_texts) + " texts" + (f.count ? ", " + f.text() : "")};
}

struct adversarial {
  std::string name;
  orc::bytes v;
  std::uint64_t root = 0;  // expected minimal root when a power
};

std::vector<adversarial> adversarial_corpus(std::uint64_t max_n) {
  std::vector<adversarial> c;
  for (std::uint64_t n : std::initializer_list<std::uint64_t>{100, 1000, 10000, max_n}) {
    if (n > max_n) continue;
    c.push_back({"fibonacci " + std::to_string(n), fibonacci(n), 0});
    c.push_back({"a^" + std::to_string(n), orc::bytes(n, 'a'), 1});
  }
  for (std::uint64_t q : {2, 3, 7, 50, 1000}) {
    auto root = random_text(q, 3);
    root[0] = 'z';  // primitive: unique symbol
    for (std::uint64_t n : std::initializer_list<std::uint64_t>{1000, max_n}) {
      std::uint64_t k = std::max<std::uint64_t>(2, n / q);
      c.push_back({"power |a|=" + std::to_string(q) + " k=" + std::to_string(k), repeat(root, k), q});
      auto near = repeat(root, k);
      near.push_back('a');
      c.push_back({"near power |a|=" + std::to_string(q), near, 0});
    }
  }
  auto fib_root = fibonacci(89);
  c.push_back({"fibonacci^k", repeat(fib_root, max_n / 89), 89});
  return c;
}

outcome criterion3() {
  failures f;
  std::uint64_t runs = 0, powers_seen = 0;
  for (const auto& a : adversarial_corpus(c3_max_n)) {
    const std::uint64_t n = a.v.size();
    auto want = orc::doubling_bwt(a.v);
    if (n <= 2000 && want != orc::naive_bwt(a.v)) f.add("oracles disagree on " + a.name);
    auto t = text::from_bytes(a.v);
    for (std::uint64_t b : {std::max<std::uint64_t>(2, n / 64), std::max<std::uint64_t>(2, n / 7), std::max<std::uint64_t>(2, n / 2)})
      for (auto mode : {run_mode::balanced, run_mode::skewed}) {
        ++runs;
        try {
          memory_store st;
          auto r = run(t, pipeline(b, mode), st);
          if (read_bwt(st, r.bwt.name) != want) f.add(a.name + " b'=" + std::to_string(b));
          bool expect_power = a.root != 0;
          if (r.report.power != expect_power || (expect_power && r.report.power_root != a.root))
            f.add(a.name + ": power path " + (r.report.power ? "taken" : "missed"));
          if (r.report.power) ++powers_seen;
          // Powers sort the root with its own plan; the bound is checked there.
          if (!r.report.power && r.report.max_working_length > c3_working_factor * r.report.plan.b)
            f.add(a.name + ": working string " + std::to_string(r.report.max_working_length));
        } catch (const std::exception& e) {
          f.add(a.name + ": " + e.what());
        }
      }
  }
  return {f.count == 0, std::to_string(runs) + " runs, power shortcut on " + std::to_string(powers_seen) +
                            (f.count ? ", " + f.text() : "")};
}

outcome criterion4() {
  failures f;
  std::uint64_t strings = 0;
  for (unsigned n = 1; n <= c4_max_n; ++n)
    for (std::uint64_t code = 0; code < (1ULL << n); ++code) {
      ++strings;
      auto w = binary_text(code, n);
      auto ba = border_array(w);
      if (border_values(ba) != orc::naive_borders(w)) f.add("borders of " + label(w));
      for (unsigned i = 0; i < n; ++i) {
        orc::bytes prefix(w.begin(), w.begin() + i + 1);
        if (minimal_period_of_prefix(ba, i) != orc::naive_min_period(prefix)) f.add("period of " + label(prefix));
      }
      if (minimal_short_period(w).value_or(0) != orc::naive_short_period(w)) f.add("short period of " + label(w));
      if (n < 2) continue;
      auto t = text::from_bytes(w);
      for (std::uint64_t bt = 2; bt <= n; ++bt) {
        auto part = to_partition(plan_blocks(n, bt));
        auto info = compute_repetition_info(t, part);
        for (std::uint64_t i = 0; i < part.count(); ++i) {
          if (info.propagated[i] != orc::naive_propagated(w, part.start(i), part.length(i)))
            f.add("propagation " + label(w) + " b'=" + std::to_string(bt));
          std::uint64_t j = part.successor(i), p = info.propagated[j];
          bool gen = false;
          if (p) {
            std::uint64_t e = part.start(j);
            gen = orc::circular_window(w, (e + n - p % n) % n, p) == orc::circular_window(w, e, p);
          }
          if (static_cast<bool>(info.generates[i]) != gen) f.add("generation " + label(w) + " b'=" + std::to_string(bt));
        }
      }
    }
  return {f.count == 0, std::to_string(strings) + " strings" + (f.count ? ", " + f.text() : "")};
}

std::vector<std::uint64_t> random_gap_array(std::uint64_t len, std::uint64_t sum, std::uint64_t hot) {
  std::vector<std::uint64_t> g(len, 0);
  for (std::uint64_t k = 0; k < sum; ++k) ++g[hot ? uniform(0, std::min(len, hot) - 1) * (len / std::min(len, hot)) : uniform(0, len - 1)];
  return g;
}

outcome criterion5() {
  failures f;
  memory_store st;
  std::uint64_t dense_checked = 0, sparse_checked = 0;
  double worst = 0;
  for (int k = 0; k < c5_arrays; ++k) {
    std::uint64_t len = uniform(1, 3000);
    std::uint64_t sum;
    switch (k % 4) {
      case 0: sum = uniform(1, len); break;                     // s <= l
      case 1: sum = uniform(len + 1, 8 * len + 1); break;       // s > l
      case 2: sum = uniform(1, std::max<std::uint64_t>(1, len / 16)); break;  // sparse regime
      default: sum = uniform(1, 4 * len); break;
    }
    auto g = random_gap_array(len, sum, k % 3 == 0 ? uniform(1, 20) : 0);
    std::uint64_t nz = 0;
    for (auto x : g) nz += x != 0;
    auto d = write_dense_gap(st, "d", g);
    auto s = write_sparse_gap(st, "s", g, sparse_anchor_stride(len));
    for (auto* name : {"d", "s"}) {
      gap_file gf(st, name);
      double bits = static_cast<double>(gap_encoded_bits(gf));
      double bound = gap_size_bound_bits(gf.kind(), len, sum, nz);
      worst = std::max(worst, bits / bound);
      if (bits > bound)
        f.add(std::string(file_kind_name(gf.kind())) + " l=" + std::to_string(len) + " s=" + std::to_string(sum) +
              " bits " + std::to_string(static_cast<std::uint64_t>(bits)) + " > " + std::to_string(bound));
    }
    (void)d;
    (void)s;
    ++dense_checked;
    ++sparse_checked;
    st.remove("d");
    st.remove("s");
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%llu dense + %llu sparse arrays, worst size/bound %.3f",
                (unsigned long long)dense_checked, (unsigned long long)sparse_checked, worst);
  return {f.count == 0, buf + (f.count ? ", " + f.text() : std::string())};
}

outcome criterion6() {
  failures f;
  memory_store st;
  std::uint64_t restarts = 0;
  for (int rep = 0; rep < 100; ++rep) {
    // BWT: runs injected into random symbols; every block start is a restart point.
    auto s = random_text(uniform(1, 3000), static_cast<unsigned>(uniform(1, 40)));
    for (int k = 0; k < 20; ++k) {
      std::size_t at = uniform(0, s.size() - 1), len = uniform(1, 200);
      for (std::size_t x = at; x < std::min(s.size(), at + len); ++x) s[x] = s[at];
    }
    std::uint64_t d = uniform(8, 400);
    auto info = write_bwt(st, "bwt", s, d);
    bwt_file bf(st, "bwt");
    if (bf.info().m != s.size() || bf.info().blocks != info.blocks) f.add("bwt header");
    for (std::uint64_t start = 0; start < s.size(); start += d, ++restarts) {
      bwt_decoder dec(bf, start, 64);
      for (std::uint64_t k = start; k < s.size(); ++k)
        if (dec.next() != s[k]) {
          f.add("bwt from " + std::to_string(start));
          break;
        }
    }

    // Gap arrays in both forms; dense restarts every e values, sparse anchors.
    std::uint64_t len = uniform(1, 2000);
    auto g = random_gap_array(len, uniform(0, rep % 2 ? 3 * len : len / 10 + 1), 0);
    std::uint64_t e = uniform(1, 100);
    write_dense_gap(st, "dg", g, e);
    write_sparse_gap(st, "sg", g, uniform(1, 16));
    gap_file dg(st, "dg"), sg(st, "sg");
    for (std::uint64_t i = 0; i < len; i += dg.restart_interval(), ++restarts) {
      gap_value_decoder dec(dg, i, 64);
      for (std::uint64_t k = i; k < len; ++k)
        if (dec.next() != g[k]) {
          f.add("dense gap from " + std::to_string(i));
          break;
        }
    }
    for (std::uint64_t a = 0; a < sg.anchor_count(); ++a, ++restarts) {
      std::uint64_t i = sg.anchor(a).second;
      gap_value_decoder dec(sg, i, 64);
      for (std::uint64_t k = i; k < len; ++k)
        if (dec.next() != g[k]) {
          f.add("sparse gap from anchor " + std::to_string(a));
          break;
        }
    }
    if (read_gap(st, "sg") != g || read_gap(st, "dg") != g) f.add("gap full decode");

    // gt bits: forward from every position and backward from every end.
    std::vector<std::uint8_t> bits(uniform(0, 1500));
    for (auto& b : bits) b = static_cast<std::uint8_t>(uniform(0, 1));
    write_gt(st, "gt", bits);
    gt_file gf(st, "gt");
    for (std::uint64_t start = 0; start < bits.size(); start += 7, ++restarts) {
      gt_reader r(gf, start, 16);
      for (std::uint64_t k = start; k < bits.size(); ++k)
        if (r.next() != (bits[k] != 0)) {
          f.add("gt from " + std::to_string(start));
          break;
        }
      gt_reverse_reader rr(gf, start + 1, 16);
      for (std::uint64_t k = start + 1; k-- > 0;)
        if (rr.next() != (bits[k] != 0)) {
          f.add("gt backward from " + std::to_string(start + 1));
          break;
        }
    }

    // ISA samples: reader positioned at every rank.
    std::vector<isa_sample> samples;
    std::uint64_t rank = 0;
    for (std::uint64_t k = uniform(0, 400); k > 0; --k) {
      rank += uniform(1, 5);
      samples.emplace_back(uniform(0, 1ULL << 40), rank);
    }
    write_isa(st, "isa", 5, samples);
    for (std::uint64_t r = 0; r <= rank; r += 3, ++restarts) {
      isa_reader ir(st, "isa");
      ir.seek_rank(r);
      auto it = std::lower_bound(samples.begin(), samples.end(), r, [](auto& s, auto x) { return s.second < x; });
      for (; it != samples.end(); ++it)
        if (ir.at_end() || ir.next() != *it) {
          f.add("isa from rank " + std::to_string(r));
          break;
        }
    }
    for (auto* name : {"bwt", "dg", "sg", "gt", "isa"}) st.remove(name);
  }
  return {f.count == 0, std::to_string(restarts) + " restart points" + (f.count ? ", " + f.text() : "")};
}

// --- criterion 7 ------------------------------------------------------------

bool same_wavelet(const wavelet_tree& a, const wavelet_tree& b) {
  if (a.size() != b.size() || a.node_count() != b.node_count()) return false;
  for (std::size_t k = 0; k < a.node_count(); ++k) {
    if (a.node(k).size() != b.node(k).size()) return false;
    for (std::uint64_t i = 0; i < a.node(k).size(); ++i)
      if (a.node(k)[i] != b.node(k)[i]) return false;
  }
  return true;
}

void parallel_components(const std::string& name, const orc::bytes& v, unsigned p, failures& f) {
  const std::uint64_t n = v.size();
  auto t = text::from_bytes(v);
  if (power_root(t) || n < 4) return;
  auto part = to_partition(plan_blocks(n, std::max<std::uint64_t>(2, n / 4)));
  auto info = compute_repetition_info(t, part);
  thread_pool pool(p);
  sub_block_plan sub(t, part, p);
  const std::uint64_t rate = 3;
  std::vector<block_sort_result> blocks;
  for (std::uint64_t i = 0; i < part.count(); ++i) {
    blocks.push_back(sort_block(t, part, i, info, rate));
    std::vector<std::uint64_t> patterns{uniform(0, n - 1), uniform(0, n - 1), n - 1}, ranks;
    auto got = parallel_sort_block(t, part, sub, i, pool, rate, patterns, ranks);
    auto gi = got.isa_samples, wi = blocks.back().isa_samples;
    std::sort(gi.begin(), gi.end());
    std::sort(wi.begin(), wi.end());
    bool same = got.bwt == blocks.back().bwt && got.gt == blocks.back().gt &&
                got.first_rank == blocks.back().first_rank && gi == wi;
    for (std::size_t q = 0; q < patterns.size(); ++q) same = same && ranks[q] == forward_rank(t, blocks.back(), patterns[q]);
    if (!same) f.add(name + ": block sort p=" + std::to_string(p));
  }
  if (part.count() < 2) return;

  memory_store st;
  merge_options opt;
  opt.isa_rate = rate;
  opt.bwt_block = 16;
  opt.keep_inputs = true;
  auto L = make_leaf(st, t, blocks[0], opt);
  auto R = make_leaf(st, t, blocks[1], opt);
  auto serial_index = build_index(st, L);
  if (!same_wavelet(serial_index, parallel_wavelet(st, L.bwt, L.hist, code_for(L.hist), pool)))
    f.add(name + ": wavelet p=" + std::to_string(p));

  auto starts = gap_worker_starts(R.begin, R.end, gap_workers(R.size(), p, 8));
  std::vector<std::uint64_t> ranks;
  for (auto y : starts) ranks.push_back(forward_start_rank(t, {&blocks[0]}, y));
  for (auto path : {gap_path::memory, gap_path::external}) {
    opt.path = path;
    auto a = compute_gap(st, t, L, R, serial_index, ranks[0], opt);
    auto b = parallel_compute_gap(st, t, L, R, serial_index, ranks, opt, pool);
    if (gap_values(st, a.gap) != gap_values(st, b.gap)) f.add(name + ": gap p=" + std::to_string(p));
    auto ga = merge_gt(st, L, a.reversed_gt), gb = merge_gt(st, L, b.reversed_gt);
    if (read_gt(st, ga) != read_gt(st, gb)) f.add(name + ": gt p=" + std::to_string(p));
    auto ms = merge_nodes(st, t, L, R, ranks[0], opt);
    auto mp = parallel_merge_nodes(st, t, L, R, ranks, opt, pool);
    auto fs = single_bwt_file(st, ms), fp = single_bwt_file(st, mp);
    if (object_bytes(st, fs.name) != object_bytes(st, fp.name) || read_isa(st, ms.isa) != read_isa(st, mp.isa) ||
        read_gt(st, ms.gt) != read_gt(st, mp.gt) || ms.first_rank != mp.first_rank)
      f.add(name + ": merge p=" + std::to_string(p));
  }

  tracked_vector<std::uint64_t> scratch;
  std::vector<std::uint64_t> a(uniform(0, 50000));
  for (auto& x : a) x = uniform(0, n);
  auto b = a;
  radix_sort(a, n + 1, scratch);
  parallel_radix_sort(b, n + 1, scratch, pool);
  if (a != b) f.add(name + ": radix p=" + std::to_string(p));
}

outcome criterion7() {
  failures f;
  std::vector<std::pair<std::string, orc::bytes>> corpus;
  for (unsigned n = 4; n <= 10; ++n)
    for (std::uint64_t code = 0; code < (1ULL << n); code += 3) corpus.push_back({"binary", binary_text(code, n)});
  const unsigned sigmas[] = {2, 4, 26};
  for (int k = 0; k < 60; ++k) corpus.push_back({"random", random_text(uniform(2, c2_max_n), sigmas[k % 3])});
  for (auto& a : adversarial_corpus(20000)) corpus.push_back({a.name, a.v});

  std::uint64_t drivers = 0;
  for (auto& [name, v] : corpus) {
    auto t = text::from_bytes(v);
    auto cfg = pipeline(std::max<std::uint64_t>(2, uniform(2, std::max<std::uint64_t>(2, v.size() / 3))),
                        drivers % 2 ? run_mode::skewed : run_mode::balanced);
    cfg.min_worker_steps = 8;
    memory_store s1;
    auto r1 = run(t, cfg, s1);
    auto want = object_bytes(s1, r1.bwt.name);
    for (unsigned p : {1u, 2u, 4u, 8u}) {
      cfg.threads = p;
      memory_store sp;
      try {
        auto rp = run(t, cfg, sp);
        ++drivers;
        if (object_bytes(sp, rp.bwt.name) != want) f.add(name + " " + label(v) + ": driver p=" + std::to_string(p));
      } catch (const std::exception& e) {
        f.add(name + ": " + e.what());
      }
      if (&v == &corpus.front().second || name != "binary" || uniform(0, 20) == 0) parallel_components(name, v, p, f);
    }
  }

  // Speedup on one larger text, reported only.
  auto big = random_text(2 << 20, 26);
  auto t = text::from_bytes(big);
  std::ostringstream speed;
  double base = 0;
  for (unsigned p : {1u, 2u, 4u, 8u}) {
    run_config cfg;
    cfg.block_size = big.size() / 8;
    cfg.threads = p;
    memory_store st;
    auto t0 = std::chrono::steady_clock::now();
    run(t, cfg, st);
    double s = seconds_since(t0);
    if (p == 1) base = s;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%sp=%u %.2fx", p == 1 ? "" : " ", p, base / s);
    speed << buf;
  }
  return {f.count == 0, std::to_string(drivers) + " parallel driver runs, speedup (2 MiB) " + speed.str() +
                            (f.count ? ", " + f.text() : "")};
}

// --- criterion 8 ------------------------------------------------------------

struct timed_run {
  run_result result;
  double seconds = 0;
};

timed_run budgeted_run(const text& t, double fraction, directory_store& st) {
  run_config cfg;
  cfg.memory_budget = static_cast<std::uint64_t>(fraction * static_cast<double>(t.size()));
  auto t0 = std::chrono::steady_clock::now();
  auto r = run(t, cfg, st);
  return {std::move(r), seconds_since(t0)};
}

outcome criterion8() {
  failures f;
  std::ostringstream detail;
  {
    auto v = random_text(c8_n, 26);
    auto t = text::from_bytes(v);
    directory_store st;
    auto r = budgeted_run(t, c8_budget_fraction, st);
    const auto budget = static_cast<double>(c8_budget_fraction * static_cast<double>(c8_n));
    const auto peak = static_cast<double>(r.result.report.peak_tracked_bytes);
    char buf[256];
    std::snprintf(buf, sizeof buf, "50 MiB: peak %.2f MB / budget %.2f MB (%.1f%%), %s mode, %llu groups, %.0f s",
                  peak / 1e6, budget / 1e6, 100 * peak / budget, run_mode_name(r.result.report.mode),
                  (unsigned long long)r.result.report.groups, r.seconds);
    detail << buf;
    if (peak > budget * (1 + c8_slack)) f.add("peak over budget");
    if (r.seconds > c8_max_seconds) f.add("runtime over limit");
    auto bwt = read_bwt(st, r.result.bwt.name);
    if (orc::invert_bwt(bwt, r.result.first_rank) != v) f.add("BWT does not invert to the input");
  }
  // Doubling trend, averaged over runs.
  double avg[2] = {0, 0};
  for (int k = 0; k < 2; ++k) {
    auto v = random_text(c8_trend_n << k, 26);
    auto t = text::from_bytes(v);
    for (int rep = 0; rep < c8_trend_runs; ++rep) {
      directory_store st;
      avg[k] += budgeted_run(t, c8_budget_fraction, st).seconds / c8_trend_runs;
    }
  }
  const double ratio = avg[1] / avg[0];
  char buf[160];
  std::snprintf(buf, sizeof buf, "; doubling %llu->%llu MiB: %.2f s -> %.2f s, ratio %.2f (limit %.1f)",
                (unsigned long long)(c8_trend_n >> 20), (unsigned long long)(c8_trend_n >> 19), avg[0], avg[1], ratio,
                c8_trend_limit);
  detail << buf;
  if (ratio >= c8_trend_limit) f.add("doubling ratio");
  return {f.count == 0, detail.str() + (f.count ? ", " + f.text() : "")};
}

// --- criterion 9 ------------------------------------------------------------

outcome criterion9() {
  failures f;
  const std::uint64_t sizes[] = {1ULL << 20, 2ULL << 20, 4ULL << 20, 8ULL << 20};
  std::vector<std::array<double, 3>> io;  // gap, bwt, gt
  for (auto n : sizes) {
    auto v = random_text(n, 26);
    run_config cfg;
    cfg.block_size = n / c9_blocks;
    cfg.mode = run_mode::balanced;
    cfg.force_external_gap = true;
    directory_store st;
    auto r = run(text::from_bytes(v), cfg, st);
    auto total = [&](io_class c) {
      return static_cast<double>(r.report.io_read[unsigned(c)] + r.report.io_written[unsigned(c)]);
    };
    io.push_back({total(io_class::gap), total(io_class::bwt), total(io_class::gt)});
  }
  auto loglog = [](double n) { return std::log2(std::log2(n)); };
  std::ostringstream detail;
  const char* names[] = {"gap", "bwt", "gt"};
  for (int c = 0; c < 3; ++c) {
    detail << (c ? "; " : "") << names[c] << " bytes/sym";
    for (std::size_t k = 0; k < io.size(); ++k) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.2f", io[k][c] / static_cast<double>(sizes[k]));
      detail << buf;
      const double n0 = static_cast<double>(sizes[0]), nk = static_cast<double>(sizes[k]);
      const double model = c == 0 ? nk * loglog(nk) / (n0 * loglog(n0)) : nk / n0;
      if (io[k][c] / io[0][c] > c9_trend_tolerance * model) f.add(std::string(names[c]) + " grows too fast");
    }
  }
  return {f.count == 0, detail.str() + (f.count ? ", " + f.text() : "")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-9"};
  std::vector<int> only;
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<int, std::function<outcome()>>> all = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}};
  std::set<int> wanted(only.begin(), only.end());
  bool all_pass = true;
  for (auto& [id, fn] : all) {
    if (!wanted.empty() && !wanted.count(id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::printf("criterion %d: %s  (%.1f s) %s\n", id, o.pass ? "PASS" : "FAIL", seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
