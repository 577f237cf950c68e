#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "bwtmerge/extio/store.hpp"
#include "bwtmerge/memory.hpp"

namespace bwtmerge {

class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bit length of the Elias gamma code of z > 0.
inline unsigned gamma_length(std::uint64_t z) { return 2 * (63 - std::countl_zero(z)) + 1; }

// MSB-first bit writer appending to a byte sink. Call flush() before touching
// the sink directly; flush pads the current byte with zeros.
class bit_writer {
 public:
  explicit bit_writer(byte_sink& sink, std::size_t buffer_bytes = 1 << 16);
  ~bit_writer();
  bit_writer(const bit_writer&) = delete;
  bit_writer& operator=(const bit_writer&) = delete;

  // Low w bits of v, w <= 64.
  void put(std::uint64_t v, unsigned w) {
    if (w > 56) {
      put_small(v >> 32, w - 32);
      put_small(v & 0xffffffffULL, 32);
    } else {
      put_small(v, w);
    }
  }
  void put_bit(bool b) { put_small(b ? 1 : 0, 1); }
  void put_gamma(std::uint64_t z);
  void put_zeros(std::uint64_t k);

  // Bits written through this writer.
  std::uint64_t bits() const { return bits_; }
  void flush();

 private:
  void put_small(std::uint64_t v, unsigned w) {
    if (w == 0) return;
    acc_ = (acc_ << w) | (v & ((1ULL << w) - 1));
    nacc_ += w;
    bits_ += w;
    while (nacc_ >= 8) {
      nacc_ -= 8;
      buf_[fill_++] = static_cast<std::uint8_t>(acc_ >> nacc_);
      if (fill_ == buf_.size()) drain();
    }
    acc_ &= (1ULL << nacc_) - 1;
  }
  void drain();

  byte_sink& sink_;
  tracked_vector<std::uint8_t> buf_;
  std::size_t fill_ = 0;
  std::uint64_t acc_ = 0;
  unsigned nacc_ = 0;
  std::uint64_t bits_ = 0;
};

// MSB-first bit reader over a byte range of a source. Reads beyond bit_end throw.
class bit_reader {
 public:
  bit_reader(const byte_source& src, std::uint64_t bit_begin, std::uint64_t bit_end,
             std::size_t buffer_bytes = 1 << 16);
  bit_reader(const bit_reader&) = delete;
  bit_reader& operator=(const bit_reader&) = delete;

  void seek(std::uint64_t bitpos);
  std::uint64_t position() const { return (buf_off_ + pos_) * 8 - nacc_; }
  std::uint64_t end() const { return end_; }
  bool at_end() const { return position() >= end_; }

  std::uint64_t get(unsigned w) {
    if (w > 56) {
      std::uint64_t hi = get(w - 32);
      return (hi << 32) | get(32);
    }
    if (w == 0) return 0;
    if (nacc_ < w) refill();
    if (position() + w > end_) throw format_error("bit stream underrun");
    std::uint64_t v = acc_ >> (64 - w);
    acc_ <<= w;
    nacc_ -= w;
    return v;
  }
  bool get_bit() { return get(1) != 0; }
  // Next w <= 56 bits without consuming; zero padded past the end.
  std::uint64_t peek(unsigned w) {
    if (nacc_ < w) refill();
    return acc_ >> (64 - w);
  }
  void skip(unsigned w) {
    if (nacc_ < w) refill();
    if (position() + w > end_) throw format_error("bit stream underrun");
    acc_ <<= w;
    nacc_ -= w;
  }
  std::uint64_t get_gamma() {
    if (nacc_ < 32) refill();
    if (acc_ != 0) {
      unsigned z = static_cast<unsigned>(std::countl_zero(acc_));
      if (z < nacc_ && 2 * z + 1 <= nacc_) {
        if (position() + 2 * z + 1 > end_) throw format_error("bit stream underrun");
        std::uint64_t v = acc_ >> (63 - 2 * z);
        acc_ <<= 2 * z + 1;
        nacc_ -= 2 * z + 1;
        return v;
      }
    }
    return get_gamma_slow();
  }

 private:
  void refill();
  void load(std::uint64_t byte_off);
  std::uint64_t get_gamma_slow();

  const byte_source& src_;
  std::uint64_t end_;
  tracked_vector<std::uint8_t> buf_;
  std::uint64_t buf_off_ = 0;
  std::size_t buf_len_ = 0;
  std::size_t pos_ = 0;
  std::uint64_t acc_ = 0;
  unsigned nacc_ = 0;
};

// Copy nbits from a reader into a writer.
void copy_bits(bit_reader& in, std::uint64_t nbits, bit_writer& out);

}  // namespace bwtmerge
