#include "bwtmerge/text.hpp"

#include <stdexcept>

#include "doctest.h"
#include "support.hpp"

using namespace bwtmerge;

TEST_CASE("plan_blocks evaluates the block size formula") {
  auto p = plan_blocks(10, 4);
  CHECK(p.b == 4);
  CHECK(p.nu == 3);
  CHECK(p.mu == 1);
  CHECK(p.boundaries() == std::vector<interval>{{0, 4}, {4, 7}, {7, 10}});

  p = plan_blocks(6, 6);
  CHECK(p.b == 6);
  CHECK(p.nu == 1);
  CHECK(p.mu == 1);
  CHECK(p.boundaries() == std::vector<interval>{{0, 6}});

  p = plan_blocks(9, 3);
  CHECK(p.b == 3);
  CHECK(p.nu == 3);
  CHECK(p.mu == 3);
  CHECK(p.boundaries() == std::vector<interval>{{0, 3}, {3, 6}, {6, 9}});
}

TEST_CASE("plan_blocks rejects invalid targets") {
  CHECK_THROWS_AS(plan_blocks(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(plan_blocks(5, 6), std::invalid_argument);
  CHECK_THROWS_AS(plan_blocks(0, 1), std::invalid_argument);
}

TEST_CASE("plan_blocks invariants hold for all small inputs") {
  for (std::uint64_t n = 1; n <= 200; ++n) {
    for (std::uint64_t bt = 1; bt <= n; ++bt) {
      auto p = plan_blocks(n, bt);
      std::uint64_t eff = n >= 2 ? std::max<std::uint64_t>(bt, 2) : bt;
      REQUIRE(p.nu == (n + eff - 1) / eff);
      REQUIRE(p.b == (n + p.nu - 1) / p.nu);
      REQUIRE(p.nu == (n + p.b - 1) / p.b);
      REQUIRE(p.b <= eff);
      REQUIRE(p.mu * p.b + (p.nu - p.mu) * (p.b - 1) == n);
      REQUIRE(p.mu >= 1);
      auto bs = p.boundaries();
      std::uint64_t at = 0;
      for (std::uint64_t i = 0; i < bs.size(); ++i) {
        REQUIRE(bs[i].begin == at);
        REQUIRE(bs[i].length() == (i < p.mu ? p.b : p.b - 1));
        for (std::uint64_t x = bs[i].begin; x < bs[i].end; ++x) REQUIRE(p.block_of(x) == i);
        at = bs[i].end;
      }
      REQUIRE(at == n);
      REQUIRE(plan_blocks(n, bt) == p);
    }
  }
}

TEST_CASE("circular_char wraps around") {
  auto t = text::from_string("banana");
  CHECK(circular_char(t, 0) == 'b');
  CHECK(circular_char(t, 6) == 'b');
  CHECK(circular_char(t, 11) == 'a');
  CHECK(t.sigma() == static_cast<unsigned>('n') + 1);
  CHECK_THROWS_AS(text::from_string(""), std::invalid_argument);
}

TEST_CASE("refine keeps piece lengths within one of each other") {
  for (std::uint64_t n = 2; n <= 60; ++n)
    for (std::uint64_t bt = 2; bt <= n; ++bt)
      for (std::uint64_t k = 1; k <= 5; ++k) {
        auto q = refine(to_partition(plan_blocks(n, bt)), k);
        std::uint64_t lo = n, hi = 0;
        for (std::uint64_t i = 0; i < q.count(); ++i) {
          REQUIRE(q.length(i) >= 1);
          lo = std::min(lo, q.length(i));
          hi = std::max(hi, q.length(i));
        }
        REQUIRE(hi - lo <= 1);
        REQUIRE(q.starts.back() == n);
      }
}
