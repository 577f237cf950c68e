#include <doctest.h>

#include "bwtmerge/mergetree.hpp"
#include "support.hpp"

using namespace bwtmerge;
namespace orc = bwtmerge::oracle;
using testing_support::binary_text;
using testing_support::random_bytes;
using testing_support::uniform;

namespace {

std::string bwt_of(const std::string& s, run_config cfg) {
  auto v = run_bwt(text::from_string(s), cfg);
  return {v.begin(), v.end()};
}

run_config with_block(std::uint64_t b, run_mode mode = run_mode::balanced) {
  run_config c;
  c.block_size = b;
  c.mode = mode;
  c.isa_rate = 2;
  c.bwt_block = 4;
  return c;
}

std::vector<std::uint64_t> leaves_in_order(const merge_tree& t) {
  std::vector<std::uint64_t> out;
  for (int v : t.post_order())
    if (t.nodes[v].leaf()) out.push_back(t.nodes[v].lo);
  return out;
}

}  // namespace

TEST_CASE("balanced tree shapes") {
  auto one = build_tree(1);
  CHECK(one.nodes.size() == 1);
  CHECK(one.depth() == 0);

  auto three = build_tree(3);
  const auto& r3 = three.nodes[three.root];
  CHECK(three.nodes[r3.left].lo == 0);
  CHECK(three.nodes[r3.left].hi == 2);
  CHECK(three.nodes[r3.right].lo == 2);
  CHECK(three.depth() == 2);

  auto five = build_tree(5);
  const auto& r5 = five.nodes[five.root];
  CHECK(five.nodes[r5.left].hi == 3);
  CHECK(five.nodes[r5.right].lo == 3);
  CHECK(five.nodes[r5.right].hi == 5);
  CHECK(five.depth() == 3);
  CHECK(five.leaves() == 5);
  CHECK(leaves_in_order(five) == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
  CHECK(five.post_order().back() == five.root);
  CHECK_THROWS_AS(build_tree(0), std::invalid_argument);
}

TEST_CASE("chain tree over groups") {
  auto t = build_chain_tree({2, 3, 6});
  const auto& root = t.nodes[t.root];
  CHECK(t.nodes[root.left].lo == 0);
  CHECK(t.nodes[root.left].hi == 2);
  const auto& rest = t.nodes[root.right];
  CHECK(rest.lo == 2);
  CHECK(t.nodes[rest.left].hi == 3);
  CHECK(t.nodes[rest.right].lo == 3);
  CHECK(t.nodes[rest.right].hi == 6);
  CHECK(t.leaves() == 6);
  CHECK(leaves_in_order(t) == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5});
  // Single-block groups give the plain skewed chain.
  auto chain = build_chain_tree({1, 2, 3, 4});
  CHECK(chain.depth() == 3);
  CHECK_THROWS_AS(build_chain_tree({2, 2}), std::invalid_argument);
}

TEST_CASE("small examples") {
  CHECK(bwt_of("banana", with_block(3)) == "nnbaaa");
  CHECK(bwt_of("banana", with_block(2, run_mode::skewed)) == "nnbaaa");
  CHECK(bwt_of("mississippi", with_block(3)) == "pssmipissii");
  CHECK(bwt_of("a", {}) == "a");
  CHECK(bwt_of("ab", with_block(1)) == "ba");
}

TEST_CASE("powers take the root shortcut") {
  memory_store st;
  auto r = run(text::from_string("abab"), with_block(2), st);
  CHECK(r.report.power);
  CHECK(r.report.power_root == 2);
  auto v = read_bwt(st, r.bwt.name);
  CHECK(std::string(v.begin(), v.end()) == "bbaa");
  CHECK(bwt_of("aaaa", with_block(2)) == "aaaa");
}

TEST_CASE("run report") {
  memory_store st;
  auto cfg = with_block(4);
  auto r = run(text::from_string("mississippi river banks"), cfg, st);
  CHECK_FALSE(r.report.power);
  CHECK(r.report.n == 23);
  CHECK(r.report.plan.nu == 6);
  CHECK(r.report.tree_depth == 3);
  CHECK(r.report.merges.merges == 5);
  CHECK(r.report.mode == run_mode::balanced);
  CHECK(r.report.max_working_length <= 6 * 4);
  CHECK(r.report.stages.size() >= 3);
  // Only the final BWT and ISA remain.
  CHECK(st.object_count() == 2);
  auto sa = orc::naive_circular_sa(orc::to_bytes("mississippi river banks"));
  for (std::uint64_t k = 0; k < sa.size(); ++k)
    if (sa[k] == 0) CHECK(r.first_rank == k);
}

TEST_CASE("empty text and tiny budgets are rejected") {
  CHECK_THROWS_AS(run_bwt(text::from_string(""), {}), std::invalid_argument);
  run_config c;
  c.memory_budget = 1000;
  try {
    run_bwt(text::from_string("banana"), c);
    FAIL("expected budget_error");
  } catch (const budget_error& e) {
    CHECK(e.minimal_budget() == minimal_budget(0));
    CHECK(e.minimal_budget() > 1000);
  }
}

TEST_CASE("exhaustive binary texts in every mode") {
  std::uint64_t checked = 0;
  for (unsigned n = 1; n <= 12; ++n) {
    for (std::uint64_t code = 0; code < (1ULL << n); ++code) {
      auto v = binary_text(code, n);
      auto want = orc::naive_bwt(v);
      auto t = text::from_bytes(v);
      std::uint64_t b = 1 + code % n;
      for (auto mode : {run_mode::balanced, run_mode::skewed}) {
        auto cfg = with_block(b, mode);
        cfg.force_external_gap = code % 3 == 0;
        REQUIRE(run_bwt(t, cfg) == want);
        ++checked;
      }
    }
  }
  CHECK(checked > 16000);
}

TEST_CASE("powers of short roots") {
  for (int rep = 0; rep < 300; ++rep) {
    auto root = random_bytes(uniform(1, 4), static_cast<unsigned>(uniform(1, 3)));
    std::uint64_t k = uniform(1, 4);
    std::vector<std::uint8_t> v;
    for (std::uint64_t j = 0; j < k; ++j) v.insert(v.end(), root.begin(), root.end());
    auto cfg = with_block(uniform(1, v.size()), uniform(0, 1) ? run_mode::balanced : run_mode::skewed);
    REQUIRE(run_bwt(text::from_bytes(v), cfg) == orc::naive_bwt(v));
  }
}

TEST_CASE("random texts across modes, groups and thread counts") {
  for (int rep = 0; rep < 120; ++rep) {
    std::uint64_t n = uniform(1, 1500);
    auto v = random_bytes(n, static_cast<unsigned>(uniform(1, rep % 3 ? 4 : 60)));
    if (rep % 4 == 0)
      for (std::uint64_t k = n / 2; k < n; ++k) v[k] = v[k % std::max<std::uint64_t>(1, n / 7)];
    auto want = orc::naive_bwt(v);
    auto t = text::from_bytes(v);
    run_config cfg;
    cfg.block_size = uniform(1, std::max<std::uint64_t>(1, n / 3));
    cfg.isa_rate = uniform(1, 8);
    cfg.bwt_block = uniform(1, 64);
    cfg.gap.buffer_capacity = uniform(1, 128);
    cfg.min_worker_steps = uniform(1, 64);
    cfg.skewed_group_blocks = uniform(0, 3);
    cfg.force_external_gap = uniform(0, 1);
    for (unsigned p : {1u, 2u, 4u, 8u}) {
      cfg.threads = p;
      cfg.mode = static_cast<run_mode>(uniform(0, 2));
      REQUIRE(run_bwt(t, cfg) == want);
    }
  }
}

TEST_CASE("budgeted runs pick grouped skewed when the index does not fit") {
  auto v = random_bytes(400000, 26);
  auto t = text::from_bytes(v);
  run_config cfg;
  cfg.memory_budget = 1200000;  // index share ~106 KB against ~150 KB for half the text
  memory_store st;
  auto r = run(t, cfg, st);
  CHECK(r.report.mode == run_mode::skewed);
  CHECK(r.report.groups > 1);
  CHECK(r.report.groups < r.report.plan.nu);
  CHECK(r.report.peak_tracked_bytes <= cfg.memory_budget);
  CHECK(read_bwt(st, r.bwt.name) == orc::naive_bwt(v));
}
