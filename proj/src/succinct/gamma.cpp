#include "bwtmerge/succinct/gamma.hpp"

#include <bit>
#include <stdexcept>

#include "bwtmerge/bitio.hpp"

namespace bwtmerge {

std::string gamma_encode(std::uint64_t z) {
  if (z == 0) throw std::invalid_argument("gamma code cannot represent zero");
  unsigned lg = 63 - static_cast<unsigned>(std::countl_zero(z));
  std::string s(lg, '0');
  for (int k = static_cast<int>(lg); k >= 0; --k) s.push_back(((z >> k) & 1) ? '1' : '0');
  return s;
}

std::pair<std::uint64_t, std::size_t> gamma_decode(std::string_view bits, std::size_t pos) {
  std::size_t z = 0;
  while (pos + z < bits.size() && bits[pos + z] == '0') ++z;
  if (z > 63 || pos + 2 * z + 1 > bits.size()) throw format_error("truncated gamma codeword");
  std::uint64_t v = 0;
  for (std::size_t k = 0; k <= z; ++k) v = (v << 1) | (bits[pos + z + k] == '1' ? 1 : 0);
  return {v, pos + 2 * z + 1};
}

std::vector<std::uint8_t> gamma_pack(const std::vector<std::uint64_t>& values, std::uint64_t* bit_count) {
  vector_sink sink;
  std::uint64_t bits = 0;
  {
    bit_writer w(sink, 4096);
    for (auto v : values) w.put_gamma(v);
    bits = w.bits();
    w.flush();
  }
  if (bit_count) *bit_count = bits;
  return std::move(sink.bytes);
}

std::vector<std::uint64_t> gamma_unpack(const std::vector<std::uint8_t>& bytes, std::size_t count) {
  span_source src(bytes);
  bit_reader r(src, 0, bytes.size() * 8, 4096);
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(r.get_gamma());
  return out;
}

}  // namespace bwtmerge
