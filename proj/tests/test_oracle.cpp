#include <doctest.h>

#include <algorithm>

#include "bwtmerge/oracle.hpp"
#include "support.hpp"

namespace orc = bwtmerge::oracle;
using testing_support::uniform;

TEST_CASE("oracle examples") {
  CHECK(orc::naive_circular_sa(orc::to_bytes("banana")) == std::vector<std::uint64_t>{5, 3, 1, 0, 4, 2});
  CHECK(orc::naive_circular_sa(orc::to_bytes("aaa")) == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(orc::naive_circular_sa(orc::to_bytes("ab")) == std::vector<std::uint64_t>{0, 1});
  CHECK(orc::naive_bwt(orc::to_bytes("banana")) == orc::to_bytes("nnbaaa"));
  CHECK(orc::naive_bwt(orc::to_bytes("abab")) == orc::to_bytes("bbaa"));
  CHECK(orc::naive_bwt(orc::to_bytes("a")) == orc::to_bytes("a"));
  CHECK(orc::naive_gap(orc::to_bytes("banana"), 3) == std::vector<std::uint64_t>{2, 0, 1, 0});
  CHECK(orc::naive_borders(orc::to_bytes("aaaa")) == std::vector<std::uint64_t>{0, 1, 2, 3});
}

TEST_CASE("prefix doubling agrees with the pairwise sort") {
  for (unsigned n = 1; n <= 10; ++n)
    for (std::uint64_t code = 0; code < (1ULL << n); ++code) {
      auto t = testing_support::binary_text(code, n);
      REQUIRE(orc::doubling_circular_sa(t) == orc::naive_circular_sa(t));
    }
  for (int rep = 0; rep < 200; ++rep) {
    auto t = testing_support::random_bytes(uniform(1, 300), static_cast<unsigned>(uniform(1, 5)));
    if (rep % 2)
      for (std::size_t k = t.size() / 3; k < t.size(); ++k) t[k] = t[k % std::max<std::size_t>(1, t.size() / 3)];
    REQUIRE(orc::doubling_bwt(t) == orc::naive_bwt(t));
  }
}

TEST_CASE("LF inversion recovers primitive texts") {
  for (int rep = 0; rep < 200; ++rep) {
    auto t = testing_support::random_bytes(uniform(2, 500), static_cast<unsigned>(uniform(2, 6)));
    t.back() = 'z';  // unique maximum: primitive
    auto sa = orc::naive_circular_sa(t);
    std::uint64_t first = std::find(sa.begin(), sa.end(), 0) - sa.begin();
    REQUIRE(orc::invert_bwt(orc::naive_bwt(t), first) == t);
  }
}
