#include "bwtmerge/bitio.hpp"

#include <algorithm>

namespace bwtmerge {

bit_writer::bit_writer(byte_sink& sink, std::size_t buffer_bytes) : sink_(sink), buf_(std::max<std::size_t>(buffer_bytes, 64)) {}

bit_writer::~bit_writer() = default;

void bit_writer::drain() {
  if (fill_) sink_.write(buf_.data(), fill_);
  fill_ = 0;
}

void bit_writer::put_gamma(std::uint64_t z) {
  if (z == 0) throw std::invalid_argument("gamma code cannot represent zero");
  unsigned lg = 63 - static_cast<unsigned>(std::countl_zero(z));
  put_zeros(lg);
  put(z, lg + 1);
}

void bit_writer::put_zeros(std::uint64_t k) {
  while (k > 32) {
    put_small(0, 32);
    k -= 32;
  }
  put_small(0, static_cast<unsigned>(k));
}

void bit_writer::flush() {
  if (nacc_ > 0) {
    unsigned pad = 8 - nacc_;
    acc_ <<= pad;
    buf_[fill_++] = static_cast<std::uint8_t>(acc_);
    bits_ += pad;
    acc_ = 0;
    nacc_ = 0;
    if (fill_ == buf_.size()) drain();
  }
  drain();
}

bit_reader::bit_reader(const byte_source& src, std::uint64_t bit_begin, std::uint64_t bit_end, std::size_t buffer_bytes)
    : src_(src), end_(bit_end) {
  std::uint64_t span_bytes = (bit_end + 7) / 8 - bit_begin / 8;
  std::size_t cap = static_cast<std::size_t>(std::min<std::uint64_t>(buffer_bytes, span_bytes + 8));
  buf_.resize(std::max<std::size_t>(cap, 16));
  seek(bit_begin);
}

void bit_reader::load(std::uint64_t byte_off) {
  buf_off_ = byte_off;
  std::uint64_t end_byte = (end_ + 7) / 8;
  std::size_t want = byte_off >= end_byte ? 0 : static_cast<std::size_t>(std::min<std::uint64_t>(buf_.size(), end_byte - byte_off));
  buf_len_ = want ? src_.read_at(byte_off, buf_.data(), want) : 0;
  if (buf_len_ < want) throw format_error("unexpected end of file");
  pos_ = 0;
}

void bit_reader::seek(std::uint64_t bitpos) {
  load(bitpos / 8);
  acc_ = 0;
  nacc_ = 0;
  refill();
  unsigned r = static_cast<unsigned>(bitpos % 8);
  if (r) {
    acc_ <<= r;
    nacc_ -= std::min(nacc_, r);
  }
}

void bit_reader::refill() {
  while (nacc_ <= 56) {
    if (pos_ == buf_len_) {
      std::uint64_t next = buf_off_ + buf_len_;
      if (next * 8 >= end_) {
        // Virtual zero padding keeps position() consistent for peeks past the end.
        return;
      }
      load(next);
      if (buf_len_ == 0) return;
    }
    acc_ |= static_cast<std::uint64_t>(buf_[pos_++]) << (56 - nacc_);
    nacc_ += 8;
  }
}

std::uint64_t bit_reader::get_gamma_slow() {
  unsigned z = 0;
  while (!get_bit()) {
    if (++z > 63) throw format_error("gamma code too long");
  }
  std::uint64_t rest = get(z);
  return (1ULL << z) | rest;
}

void copy_bits(bit_reader& in, std::uint64_t nbits, bit_writer& out) {
  while (nbits >= 32) {
    out.put(in.get(32), 32);
    nbits -= 32;
  }
  out.put(in.get(static_cast<unsigned>(nbits)), static_cast<unsigned>(nbits));
}

}  // namespace bwtmerge
