#include <doctest.h>

#include "bwtmerge/extio/gt_file.hpp"
#include "bwtmerge/merge.hpp"
#include "bwtmerge/periodicity.hpp"
#include "merge_support.hpp"
#include "support.hpp"

using namespace bwtmerge;
namespace orc = bwtmerge::oracle;
using testing_support::uniform;

using namespace merge_support;

TEST_CASE("backward search step over the banana split") {
  memory_store st;
  auto v = orc::to_bytes("banana");
  auto s = sort_all(v, {0, 3, 6}, 1);
  merge_options opt;
  auto L = make_leaf(st, s.t, s.blocks[0], opt);
  auto R = make_leaf(st, s.t, s.blocks[1], opt);
  CHECK(as_string(read_node_bwt(st, L)) == "baa");
  CHECK(as_string(read_node_bwt(st, R)) == "nna");
  // Suffix 5 ("abanan...") is below every left suffix.
  auto start = forward_start_rank(s.t, {&s.blocks[0]}, 5);
  CHECK(start == 0);
  CHECK(start == orc::naive_rank(v, 0, 3, 5));
  auto wt = build_index(st, L);
  auto go = compute_gap(st, s.t, L, R, wt, start, opt);
  CHECK(gap_values(st, go.gap) == std::vector<std::uint64_t>{2, 0, 1, 0});
  CHECK(gap_values(st, go.gap) == orc::naive_gap(v, 3));
  CHECK(merged_first_rank(st, L, go.gap) == 3);
  auto part = merge_range(st, L, R, go.gap, {}, 6, code_for(std::vector<std::uint64_t>(256, 1)), opt, "out", "isa");
  CHECK(as_string(read_bwt(st, "out")) == "nnbaaa");
}

TEST_CASE("forward start rank extremes") {
  auto v = orc::to_bytes("bcdaaa");
  auto s = sort_all(v, {0, 3, 6}, 1);
  // Suffix 5 ("abcdaa") sorts below "bcdaaa", "cdaaab" and "daaabc".
  CHECK(forward_start_rank(s.t, {&s.blocks[0]}, 5) == 0);
  auto w = orc::to_bytes("abbzzz");
  auto s2 = sort_all(w, {0, 3, 6}, 1);
  CHECK(forward_start_rank(s2.t, {&s2.blocks[0]}, 5) == 3);
}

TEST_CASE("merge_streams examples") {
  memory_store st;
  merge_options opt;
  opt.isa_rate = 1;
  auto L = make_node(st, 0, "baa", {0, 1}, {{1, 0}, {0, 1}, {2, 2}}, 1);
  auto R = make_node(st, 3, "nna", {1, 0}, {{5, 0}, {3, 1}, {4, 2}}, 1);
  gap_array g;
  g.length = 4;
  g.sum = 3;
  g.values = {2, 0, 1, 0};
  auto code = code_for(std::vector<std::uint64_t>(256, 1));
  auto p = merge_range(st, L, R, g, {}, 6, code, opt, "b", "i");
  CHECK(as_string(read_bwt(st, "b")) == "nnbaaa");
  // Naive circular SA of banana: 5 3 1 0 4 2.
  CHECK(read_isa(st, "i") == std::vector<isa_sample>{{5, 0}, {3, 1}, {1, 2}, {0, 3}, {4, 4}, {2, 5}});
  CHECK(p.isa_count == 6);

  // Right side empty: the output is the left stream.
  auto E = make_node(st, 3, "", {}, {}, 0);
  gap_array z;
  z.length = 4;
  z.values = {0, 0, 0, 0};
  merge_range(st, L, E, z, {}, 3, code, opt, "b2", "i2");
  CHECK(as_string(read_bwt(st, "b2")) == "baa");

  // Left side empty: G = [b_r], the output is the right stream.
  auto E2 = make_node(st, 0, "", {}, {}, 0);
  gap_array one;
  one.length = 1;
  one.sum = 3;
  one.values = {3};
  merge_range(st, E2, R, one, {}, 3, code, opt, "b3", "i3");
  CHECK(as_string(read_bwt(st, "b3")) == "nna");
}

TEST_CASE("compute_gap with an empty right side gives zeros") {
  memory_store st;
  auto v = orc::to_bytes("banana");
  auto s = sort_all(v, {0, 3, 6}, 1);
  merge_options opt;
  auto L = make_leaf(st, s.t, s.blocks[0], opt);
  auto E = make_node(st, 3, "", {}, {}, 0);
  auto wt = build_index(st, L);
  for (auto path : {gap_path::memory, gap_path::external}) {
    opt.path = path;
    auto go = compute_gap(st, s.t, L, E, wt, 0, opt);
    CHECK(gap_values(st, go.gap) == std::vector<std::uint64_t>{0, 0, 0, 0});
  }
}

TEST_CASE("locate_outputs walks the interleaving") {
  memory_store st;
  gap_array g;
  g.length = 4;
  g.sum = 3;
  g.values = {2, 0, 1, 0};
  // Output: R R L0 L1 R L2
  auto c = locate_outputs(st, g, {0, 1, 2, 3, 4, 5, 6});
  std::vector<merge_cursor> want{{0, 0, 0}, {0, 1, 1}, {0, 2, 2}, {1, 2, 0}, {2, 2, 0}, {2, 3, 1}, {3, 3, 0}};
  CHECK(c == want);
  CHECK_THROWS(locate_outputs(st, g, {7}));
  CHECK_THROWS(locate_outputs(st, g, {3, 2}));
}

TEST_CASE("exhaustive two-block merges over binary texts up to length 12") {
  memory_store st;
  std::uint64_t checked = 0;
  for (unsigned n = 2; n <= 12; ++n)
    for (std::uint64_t code = 0; code < (1ULL << n); ++code) {
      auto v = testing_support::binary_text(code, n);
      for (std::uint64_t m = 1; m < n; ++m) {
        auto s = sort_all(v, {0, m, n}, 2);
        if (s.power) continue;
        merge_options opt;
        opt.isa_rate = 2;
        opt.bwt_block = 4;
        opt.path = (code + m) % 2 ? gap_path::memory : gap_path::external;
        opt.gap.buffer_capacity = 1 + (code % 3);
        auto L = make_leaf(st, s.t, s.blocks[0], opt);
        auto R = make_leaf(st, s.t, s.blocks[1], opt);
        auto start = forward_start_rank(s.t, {&s.blocks[0]}, n - 1);
        REQUIRE(start == orc::naive_rank(v, 0, m, n - 1));
        {
          auto wt = build_index(st, L);
          auto go = compute_gap(st, s.t, L, R, wt, start, opt);
          REQUIRE(gap_values(st, go.gap) == orc::naive_gap(v, m));
          if (!go.gap.in_memory()) st.remove(go.gap.file);
          for (auto& f : go.reversed_gt) st.remove(f);
        }
        auto node = merge_nodes(st, s.t, L, R, start, opt);
        check_node(st, v, node, opt.isa_rate);
        remove_node(st, node);
        ++checked;
      }
    }
  CHECK(checked > 40000);
  CHECK(st.object_count() == 0);
}

TEST_CASE("multi-level merges on random partitions") {
  for (int rep = 0; rep < 300; ++rep) {
    memory_store st;
    std::uint64_t n = uniform(2, 300);
    auto v = testing_support::random_bytes(n, static_cast<unsigned>(uniform(1, 4)));
    if (uniform(0, 2) == 0) {
      // Long runs with a period.
      std::uint64_t p = uniform(1, 4);
      for (std::uint64_t i = p; i < n; ++i)
        if (uniform(0, 15) != 0) v[i] = v[i - p];
    }
    auto part = refine(to_partition(plan_blocks(n, uniform(1, n))), uniform(1, 3));
    auto s = sort_all(v, part.starts, 3);
    if (s.power) continue;
    merge_options opt;
    opt.isa_rate = 3;
    opt.bwt_block = 8;
    opt.path = rep % 2 ? gap_path::memory : gap_path::external;
    opt.gap.buffer_capacity = uniform(1, 16);
    merge_stats stats;
    auto root = merge_range_of_blocks(st, s, 0, s.blocks.size(), opt, &stats);
    check_node(st, v, root, 3);
    CHECK(stats.merges == s.blocks.size() - 1);
    remove_node(st, root);
    CHECK(st.object_count() == 0);
  }
}

TEST_CASE("memory and external gap paths agree") {
  for (int rep = 0; rep < 100; ++rep) {
    memory_store st;
    std::uint64_t n = uniform(4, 2000);
    auto v = testing_support::random_bytes(n, 3);
    std::uint64_t m = uniform(1, n - 1);
    auto s = sort_all(v, {0, m, n}, 8);
    if (s.power) continue;
    merge_options opt;
    auto L = make_leaf(st, s.t, s.blocks[0], opt);
    auto R = make_leaf(st, s.t, s.blocks[1], opt);
    auto wt = build_index(st, L);
    auto start = forward_start_rank(s.t, {&s.blocks[0]}, n - 1);
    opt.path = gap_path::memory;
    auto a = compute_gap(st, s.t, L, R, wt, start, opt);
    opt.path = gap_path::external;
    opt.gap.buffer_capacity = uniform(1, 50);
    merge_stats stats;
    auto b = compute_gap(st, s.t, L, R, wt, start, opt, &stats);
    CHECK(gap_values(st, a.gap) == gap_values(st, b.gap));
    CHECK(read_gt(st, a.reversed_gt[0]) == read_gt(st, b.reversed_gt[0]));
    CHECK(stats.gap_spills >= (n - m) / opt.gap.buffer_capacity);
    CHECK(stats.peak_pending_gap_bits <= 16 * (n + 1));
  }
}

TEST_CASE("split output ranges concatenate to the full merge") {
  for (int rep = 0; rep < 100; ++rep) {
    memory_store st;
    std::uint64_t n = uniform(4, 600);
    auto v = testing_support::random_bytes(n, 4);
    std::uint64_t m = uniform(1, n - 1);
    auto s = sort_all(v, {0, m, n}, 4);
    if (s.power) continue;
    merge_options opt;
    opt.isa_rate = 4;
    auto L = make_leaf(st, s.t, s.blocks[0], opt);
    auto R = make_leaf(st, s.t, s.blocks[1], opt);
    auto wt = build_index(st, L);
    auto go = compute_gap(st, s.t, L, R, wt, forward_start_rank(s.t, {&s.blocks[0]}, n - 1), opt);
    std::vector<std::uint64_t> cuts{0};
    while (cuts.back() < n) cuts.push_back(std::min<std::uint64_t>(n, cuts.back() + uniform(1, n / 2)));
    auto cur = locate_outputs(st, go.gap, cuts);
    std::vector<symbol> bwt;
    std::vector<isa_sample> isa;
    std::vector<std::uint64_t> hist(256);
    for (auto c : v) ++hist[c];
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      REQUIRE(cur[k].offset() == cuts[k]);
      auto p = merge_range(st, L, R, go.gap, cur[k], cuts[k + 1] - cuts[k], code_for(hist), opt, st.unique_name("b"),
                           st.unique_name("i"));
      auto b = read_bwt(st, p.bwt.name);
      bwt.insert(bwt.end(), b.begin(), b.end());
      auto i = read_isa(st, p.isa);
      isa.insert(isa.end(), i.begin(), i.end());
    }
    CHECK(bwt == orc::naive_bwt(v));
    auto sa = orc::naive_circular_sa(v);
    std::vector<isa_sample> want;
    for (std::uint64_t k = 0; k < n; ++k)
      if (sa[k] % 4 == 0) want.emplace_back(sa[k], k);
    CHECK(isa == want);
  }
}
