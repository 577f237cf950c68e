#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bwtmerge/bitio.hpp"
#include "bwtmerge/text.hpp"

namespace bwtmerge {

// Canonical prefix code over bytes. Codewords are assigned in order of
// (length, symbol); a one-symbol alphabet gets the codeword "0".
class huffman_code {
 public:
  static constexpr unsigned table_bits = 10;

  huffman_code() = default;
  static huffman_code from_histogram(std::span<const std::uint64_t> hist);
  static huffman_code from_lengths(const std::array<std::uint8_t, 256>& lengths);

  bool has(symbol a) const { return length_[a] != 0; }
  unsigned length(symbol a) const { return length_[a]; }
  // Codeword right aligned in the low length(a) bits.
  std::uint64_t code(symbol a) const { return code_[a]; }
  std::string codeword(symbol a) const;
  unsigned max_length() const { return max_length_; }
  const std::array<std::uint8_t, 256>& lengths() const { return length_; }
  // Used symbols in canonical order.
  const std::vector<symbol>& symbols() const { return sorted_; }

  void encode(bit_writer& w, symbol a) const { w.put(code_[a], length_[a]); }
  symbol decode(bit_reader& r) const;

 private:
  void assign_canonical();
  symbol decode_slow(bit_reader& r) const;

  std::array<std::uint8_t, 256> length_{};
  std::array<std::uint64_t, 256> code_{};
  unsigned max_length_ = 0;
  std::vector<symbol> sorted_;
  // Canonical decoding: first code and index of first symbol per length.
  std::array<std::uint64_t, 66> first_code_{};
  std::array<std::uint32_t, 66> first_index_{};
  std::array<std::uint32_t, 66> count_{};
  // Lookup on the next table_bits bits: symbol and length, length 0 = miss.
  std::vector<std::uint16_t> table_;
  unsigned lookup_bits_ = 0;
};

}  // namespace bwtmerge
