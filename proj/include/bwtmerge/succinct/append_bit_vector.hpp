#pragma once

#include <cstdint>

#include "bwtmerge/memory.hpp"

namespace bwtmerge {

// Append-only bit vector whose rank/select directory is extended as bits
// arrive, so queries are valid at every intermediate length.
//
// Directory: absolute 1-counts per superblock of beta0 bits, 16-bit relative
// counts per 256-bit block, and (optionally) the position of every zeta0-th
// one. beta0 and zeta0 derive from the capacity hint; exceeding the hint
// doubles it and rebuilds the directory when the parameters change.
class append_bit_vector {
 public:
  static constexpr unsigned block_bits = 256;

  explicit append_bit_vector(std::uint64_t capacity_hint = 0, bool with_select = true);
  static append_bit_vector from_words(tracked_vector<std::uint64_t> words, std::uint64_t nbits, bool with_select);

  void push_back(bool bit);
  void append(std::uint64_t bits, unsigned w);  // low w bits, least significant first

  std::uint64_t size() const { return n_; }
  std::uint64_t ones() const { return ones_; }
  bool operator[](std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  bool get(std::uint64_t i) const;

  // Counts over [0, i], i < size().
  std::uint64_t rank1(std::uint64_t i) const;
  std::uint64_t rank0(std::uint64_t i) const;
  // Ones in [0, k), k <= size(). Unchecked.
  std::uint64_t rank1_prefix(std::uint64_t k) const {
    if (k == n_) return ones_;
    std::uint64_t blk = k >> 8;
    std::uint64_t r = super_[k / beta0_] + sub_[blk];
    std::uint64_t w = blk << 2, we = k >> 6;
    for (; w < we; ++w) r += static_cast<std::uint64_t>(__builtin_popcountll(words_[w]));
    unsigned off = k & 63;
    if (off) r += static_cast<std::uint64_t>(__builtin_popcountll(words_[we] & ((1ULL << off) - 1)));
    return r;
  }
  // Position of the (k+1)-th one, k < ones().
  std::uint64_t select1(std::uint64_t k) const;

  std::uint64_t beta0() const { return beta0_; }
  std::uint64_t zeta0() const { return zeta0_; }
  std::size_t bytes() const;
  const tracked_vector<std::uint64_t>& words() const { return words_; }

 private:
  void choose_parameters(std::uint64_t hint);
  void rebuild_directory();
  void open_block(std::uint64_t i);

  tracked_vector<std::uint64_t> words_;
  tracked_vector<std::uint64_t> super_;
  tracked_vector<std::uint16_t> sub_;
  tracked_vector<std::uint64_t> samples_;
  std::uint64_t n_ = 0;
  std::uint64_t ones_ = 0;
  std::uint64_t hint_ = 0;
  std::uint64_t beta0_ = block_bits;
  std::uint64_t zeta0_ = 64;
  bool with_select_ = true;
};

}  // namespace bwtmerge
