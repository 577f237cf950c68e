#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bwtmerge/extio/store.hpp"
#include "bwtmerge/succinct/append_bit_vector.hpp"
#include "bwtmerge/text.hpp"

namespace bwtmerge {

// Border array stored as 1 0^{B[0]-B[1]+1} 1 0^{B[1]-B[2]+1} 1 ...
// so that B[i] = i - rank0(select1(i)).
class succinct_border_array {
 public:
  succinct_border_array() = default;
  explicit succinct_border_array(std::uint64_t capacity_hint);

  // Extends w by one symbol; the caller supplies random access to w.
  template <class Access>
  void extend(Access&& w) {
    std::uint64_t i = len_;
    std::uint64_t b = 0;
    if (i > 0) {
      std::uint64_t k = get(i - 1);
      auto c = w(i);
      while (k > 0 && w(k) != c) k = get(k - 1);
      b = w(k) == c ? k + 1 : 0;
      std::uint64_t prev = get(i - 1);
      for (std::uint64_t z = 0; z < prev + 1 - b; ++z) bits_.push_back(false);
    }
    bits_.push_back(true);
    ++len_;
  }

  std::uint64_t size() const { return len_; }
  std::uint64_t get(std::uint64_t i) const { return i - bits_.rank0(bits_.select1(i)); }
  std::uint64_t at(std::uint64_t i) const;
  const append_bit_vector& bits() const { return bits_; }

 private:
  append_bit_vector bits_;
  std::uint64_t len_ = 0;
};

succinct_border_array border_array(std::span<const symbol> w);
std::vector<std::uint64_t> border_values(const succinct_border_array& ba);
std::uint64_t minimal_period_of_prefix(const succinct_border_array& ba, std::uint64_t i);
std::optional<std::uint64_t> minimal_short_period(std::span<const symbol> w);

// Per-block repetition structure.
struct repetition_info {
  static constexpr std::uint64_t none = 0;

  // propagated[i] = minimal p in [1, L_i] such that t~ from the block start has
  // period p over L_i + 2p symbols, or none.
  std::vector<std::uint64_t> propagated;
  // Tail of block i equals the next p symbols, where p = propagated[successor].
  std::vector<std::uint8_t> generates;
  // First following block (cyclic) whose propagated period differs from block i's;
  // nu when every other block propagates the same period.
  std::vector<std::uint64_t> next_break;

  bool is_power = false;
  std::uint64_t root_length = 0;
  std::uint64_t exponent = 0;

  std::uint64_t block_count() const { return propagated.size(); }
};

// Minimal root length q when t = alpha^k with k > 1, independent of any
// partition. Tests the periods n/p for the primes p dividing n in O(n) each.
std::optional<std::uint64_t> power_root(const text& t);

repetition_info compute_repetition_info(const text& t, const block_plan& plan);
repetition_info compute_repetition_info(const text& t, const partition& plan);

// Spill next_break as fixed-width little-endian integers, width ceil(log2(nu+1)/8) bytes.
unsigned next_break_width(std::uint64_t nu);
void spill_next_break(const repetition_info& info, store& st, const std::string& name);
std::vector<std::uint64_t> load_next_break(store& st, const std::string& name, std::uint64_t nu);

}  // namespace bwtmerge
