#include "bwtmerge/succinct/huffman.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace bwtmerge {

huffman_code huffman_code::from_histogram(std::span<const std::uint64_t> hist) {
  if (hist.size() > 256) throw std::invalid_argument("histogram wider than the byte alphabet");
  std::array<std::uint8_t, 256> lengths{};
  std::vector<unsigned> used;
  for (unsigned a = 0; a < hist.size(); ++a)
    if (hist[a]) used.push_back(a);
  if (used.empty()) throw std::invalid_argument("build_huffman: empty histogram");
  if (used.size() == 1) {
    lengths[used[0]] = 1;
    return from_lengths(lengths);
  }
  // Node ids: leaves 0..255, inner nodes from 256. Ties on weight go to the
  // smaller id, which keeps the tree deterministic.
  struct node {
    std::uint64_t weight;
    unsigned id;
  };
  auto cmp = [](const node& x, const node& y) { return std::tie(x.weight, x.id) > std::tie(y.weight, y.id); };
  std::priority_queue<node, std::vector<node>, decltype(cmp)> pq(cmp);
  std::vector<unsigned> parent(256 + used.size(), 0);
  for (unsigned a : used) pq.push({hist[a], a});
  unsigned next = 256;
  while (pq.size() > 1) {
    node x = pq.top();
    pq.pop();
    node y = pq.top();
    pq.pop();
    parent[x.id] = next;
    parent[y.id] = next;
    pq.push({x.weight + y.weight, next});
    ++next;
  }
  unsigned root = next - 1;
  // Inner nodes are created in increasing id order, so depth can be resolved top-down.
  std::vector<unsigned> depth(next, 0);
  for (unsigned v = root; v-- > 256;) depth[v] = depth[parent[v]] + 1;  // depth[root] = 0
  for (unsigned a : used) {
    unsigned d = depth[parent[a]] + 1;
    if (d > 64) throw std::runtime_error("build_huffman: codeword longer than 64 bits");
    lengths[a] = static_cast<std::uint8_t>(d);
  }
  return from_lengths(lengths);
}

huffman_code huffman_code::from_lengths(const std::array<std::uint8_t, 256>& lengths) {
  huffman_code h;
  h.length_ = lengths;
  h.assign_canonical();
  return h;
}

void huffman_code::assign_canonical() {
  sorted_.clear();
  max_length_ = 0;
  for (unsigned a = 0; a < 256; ++a) {
    if (length_[a] > 64) throw format_error("huffman: codeword length above 64");
    if (length_[a]) {
      sorted_.push_back(static_cast<symbol>(a));
      max_length_ = std::max<unsigned>(max_length_, length_[a]);
    }
  }
  if (sorted_.empty()) throw format_error("huffman: no symbols");
  std::stable_sort(sorted_.begin(), sorted_.end(), [&](symbol x, symbol y) { return length_[x] < length_[y]; });
  if (sorted_.size() == 1) {
    if (length_[sorted_[0]] != 1) throw format_error("huffman: single symbol needs length 1");
  } else {
    // Kraft sum must be exactly one: the code is complete.
    long double kraft = 0;
    for (symbol a : sorted_) kraft += std::ldexp(1.0L, -static_cast<int>(length_[a]));
    if (std::abs(kraft - 1.0L) > 1e-12L) throw format_error("huffman: code lengths do not form a complete code");
  }
  count_.fill(0);
  first_code_.fill(0);
  first_index_.fill(0);
  std::uint64_t c = 0;
  unsigned prev = length_[sorted_[0]];
  for (std::size_t k = 0; k < sorted_.size(); ++k) {
    symbol a = sorted_[k];
    unsigned l = length_[a];
    if (k > 0) {
      ++c;
      c <<= (l - prev);
    }
    if (count_[l] == 0) {
      first_code_[l] = c;
      first_index_[l] = static_cast<std::uint32_t>(k);
    }
    ++count_[l];
    code_[a] = c;
    prev = l;
  }
  lookup_bits_ = std::min(max_length_, table_bits);
  table_.assign(std::size_t{1} << lookup_bits_, 0);
  for (symbol a : sorted_) {
    unsigned l = length_[a];
    if (l > lookup_bits_) continue;
    std::uint64_t lo = code_[a] << (lookup_bits_ - l);
    std::uint64_t hi = (code_[a] + 1) << (lookup_bits_ - l);
    for (std::uint64_t x = lo; x < hi; ++x) table_[x] = static_cast<std::uint16_t>((l << 8) | a);
  }
}

std::string huffman_code::codeword(symbol a) const {
  if (!has(a)) throw std::invalid_argument("huffman: symbol has no codeword");
  std::string s;
  for (int k = static_cast<int>(length_[a]) - 1; k >= 0; --k) s.push_back(((code_[a] >> k) & 1) ? '1' : '0');
  return s;
}

symbol huffman_code::decode(bit_reader& r) const {
  std::uint16_t e = table_[r.peek(lookup_bits_)];
  if (e != 0) {
    r.skip(e >> 8);
    return static_cast<symbol>(e & 0xff);
  }
  return decode_slow(r);
}

symbol huffman_code::decode_slow(bit_reader& r) const {
  std::uint64_t c = 0;
  for (unsigned l = 1; l <= max_length_; ++l) {
    c = (c << 1) | (r.get_bit() ? 1 : 0);
    if (count_[l] && c >= first_code_[l] && c - first_code_[l] < count_[l])
      return sorted_[first_index_[l] + (c - first_code_[l])];
  }
  throw format_error("huffman: invalid codeword");
}

}  // namespace bwtmerge
