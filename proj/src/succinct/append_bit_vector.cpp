#include "bwtmerge/succinct/append_bit_vector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bwtmerge {

namespace {

std::uint64_t ceil_log2(std::uint64_t x) { return x <= 1 ? 1 : 64 - static_cast<std::uint64_t>(std::countl_zero(x - 1)); }

// Position of the (r+1)-th one inside w.
unsigned select_in_word(std::uint64_t w, unsigned r) {
  for (unsigned k = 0; k < r; ++k) w &= w - 1;
  return static_cast<unsigned>(std::countr_zero(w));
}

}  // namespace

append_bit_vector::append_bit_vector(std::uint64_t capacity_hint, bool with_select) : with_select_(with_select) {
  choose_parameters(capacity_hint);
  words_.reserve((capacity_hint + 63) / 64);
}

void append_bit_vector::choose_parameters(std::uint64_t hint) {
  hint_ = std::max<std::uint64_t>(hint, 1024);
  std::uint64_t lg = ceil_log2(hint_);
  std::uint64_t sq = lg * lg;
  beta0_ = std::max<std::uint64_t>(block_bits, (sq + block_bits - 1) / block_bits * block_bits);
  zeta0_ = std::max<std::uint64_t>(64, sq);
}

void append_bit_vector::open_block(std::uint64_t i) {
  if (i % beta0_ == 0) super_.push_back(ones_);
  sub_.push_back(static_cast<std::uint16_t>(ones_ - super_.back()));
}

void append_bit_vector::rebuild_directory() {
  super_.clear();
  sub_.clear();
  samples_.clear();
  std::uint64_t n = n_;
  ones_ = 0;
  for (std::uint64_t i = 0; i < n; i += block_bits) {
    open_block(i);
    std::uint64_t wend = std::min<std::uint64_t>((i + block_bits + 63) / 64, (n + 63) / 64);
    for (std::uint64_t w = i / 64; w < wend; ++w) {
      std::uint64_t word = words_[w];
      if (with_select_) {
        std::uint64_t c = static_cast<std::uint64_t>(std::popcount(word));
        // Record sampled ones falling in this word.
        std::uint64_t next = (ones_ + zeta0_ - 1) / zeta0_ * zeta0_;
        while (next < ones_ + c) {
          samples_.push_back(w * 64 + select_in_word(word, static_cast<unsigned>(next - ones_)));
          next += zeta0_;
        }
        ones_ += c;
      } else {
        ones_ += static_cast<std::uint64_t>(std::popcount(word));
      }
    }
  }
}

append_bit_vector append_bit_vector::from_words(tracked_vector<std::uint64_t> words, std::uint64_t nbits,
                                                bool with_select) {
  append_bit_vector v(0, with_select);
  v.choose_parameters(nbits);
  words.resize((nbits + 63) / 64);
  if (nbits % 64) words.back() &= (1ULL << (nbits % 64)) - 1;
  v.words_ = std::move(words);
  v.n_ = nbits;
  v.rebuild_directory();
  return v;
}

void append_bit_vector::push_back(bool bit) {
  std::uint64_t i = n_;
  if (i >= hint_) {
    std::uint64_t b0 = beta0_, z0 = zeta0_;
    choose_parameters(2 * hint_);
    if (b0 != beta0_ || z0 != zeta0_) rebuild_directory();
  }
  if ((i & 63) == 0) words_.push_back(0);
  if (i % block_bits == 0) open_block(i);
  if (bit) {
    words_[i >> 6] |= 1ULL << (i & 63);
    if (with_select_ && ones_ % zeta0_ == 0) samples_.push_back(i);
    ++ones_;
  }
  n_ = i + 1;
}

void append_bit_vector::append(std::uint64_t bits, unsigned w) {
  for (unsigned k = 0; k < w; ++k) push_back((bits >> k) & 1);
}

bool append_bit_vector::get(std::uint64_t i) const {
  if (i >= n_) throw std::out_of_range("append_bit_vector::get");
  return (*this)[i];
}

std::uint64_t append_bit_vector::rank1(std::uint64_t i) const {
  if (i >= n_) throw std::out_of_range("append_bit_vector::rank1");
  return rank1_prefix(i + 1);
}

std::uint64_t append_bit_vector::rank0(std::uint64_t i) const {
  if (i >= n_) throw std::out_of_range("append_bit_vector::rank0");
  return i + 1 - rank1_prefix(i + 1);
}

std::uint64_t append_bit_vector::select1(std::uint64_t k) const {
  if (k >= ones_) throw std::out_of_range("append_bit_vector::select1");
  std::uint64_t sb_lo = 0, sb_hi = super_.size();
  if (with_select_) {
    std::uint64_t s = k / zeta0_;
    sb_lo = samples_[s] / beta0_;
    if (s + 1 < samples_.size()) sb_hi = std::min<std::uint64_t>(samples_[s + 1] / beta0_ + 1, super_.size());
  }
  // Last superblock whose prefix count is <= k.
  auto first = super_.begin() + static_cast<std::ptrdiff_t>(sb_lo);
  auto last = super_.begin() + static_cast<std::ptrdiff_t>(sb_hi);
  std::uint64_t sb = static_cast<std::uint64_t>(std::upper_bound(first, last, k) - super_.begin()) - 1;
  std::uint64_t base = super_[sb];
  std::uint64_t blocks_per_super = beta0_ / block_bits;
  std::uint64_t blk = sb * blocks_per_super;
  std::uint64_t blk_end = std::min<std::uint64_t>(blk + blocks_per_super, sub_.size());
  while (blk + 1 < blk_end && base + sub_[blk + 1] <= k) ++blk;
  std::uint64_t r = k - base - sub_[blk];
  std::uint64_t w = blk * 4;
  for (;; ++w) {
    std::uint64_t c = static_cast<std::uint64_t>(std::popcount(words_[w]));
    if (r < c) break;
    r -= c;
  }
  return w * 64 + select_in_word(words_[w], static_cast<unsigned>(r));
}

std::size_t append_bit_vector::bytes() const {
  return words_.capacity() * 8 + super_.capacity() * 8 + sub_.capacity() * 2 + samples_.capacity() * 8;
}

}  // namespace bwtmerge
