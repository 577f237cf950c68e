#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bwtmerge/succinct/append_bit_vector.hpp"
#include "bwtmerge/succinct/huffman.hpp"

namespace bwtmerge {

// Shape of a code-shaped wavelet tree: inner nodes are the proper prefixes of
// codewords, numbered in order of first appearance along the canonical symbols.
struct wavelet_shape {
  struct step {
    std::uint32_t node;
    std::uint8_t bit;
  };
  std::uint32_t node_count = 0;
  std::array<std::uint32_t, 257> path_begin{};  // paths of symbol a: steps[path_begin[a], path_begin[a+1])
  std::vector<step> steps;
  // Codeword prefix (length, value) of every node.
  std::vector<std::pair<unsigned, std::uint64_t>> node_prefix;

  static wavelet_shape from_code(const huffman_code& code);
  std::span<const step> path(symbol a) const {
    return {steps.data() + path_begin[a], steps.data() + path_begin[a + 1]};
  }
  // Bits stored per node for the given symbol histogram.
  std::vector<std::uint64_t> node_sizes(std::span<const std::uint64_t> hist) const;
};

class wavelet_tree {
 public:
  wavelet_tree() = default;
  wavelet_tree(std::span<const symbol> seq, const huffman_code& code);
  wavelet_tree(huffman_code code, wavelet_shape shape, std::vector<append_bit_vector> nodes,
               std::span<const std::uint64_t> hist);

  // Incremental construction, used when the sequence is streamed.
  static wavelet_tree begin(const huffman_code& code, std::span<const std::uint64_t> hist);
  void push_back(symbol a) {
    for (auto s : shape_.path(a)) nodes_[s.node].push_back(s.bit);
    ++n_;
  }

  std::uint64_t size() const { return n_; }
  // Occurrences of a in [0, i], i < size().
  std::uint64_t rank(symbol a, std::uint64_t i) const;
  // Occurrences of a in [0, k), k <= size(). Unchecked.
  std::uint64_t occ(symbol a, std::uint64_t k) const {
    if (single_) return a == single_symbol_ ? k : 0;
    auto p = shape_.path(a);
    if (p.empty()) return 0;
    for (auto s : p) {
      std::uint64_t ones = nodes_[s.node].rank1_prefix(k);
      k = s.bit ? ones : k - ones;
    }
    return k;
  }
  symbol access(std::uint64_t i) const;

  // C[a] = number of symbols smaller than a; 257 entries.
  const std::array<std::uint64_t, 257>& symbol_counts() const { return counts_; }
  const huffman_code& code() const { return code_; }
  const wavelet_shape& shape() const { return shape_; }
  std::size_t node_count() const { return nodes_.size(); }
  const append_bit_vector& node(std::size_t k) const { return nodes_[k]; }
  std::size_t bytes() const;

 private:
  void set_counts(std::span<const std::uint64_t> hist);

  huffman_code code_;
  wavelet_shape shape_;
  std::vector<append_bit_vector> nodes_;
  std::array<std::uint64_t, 257> counts_{};
  std::uint64_t n_ = 0;
  bool single_ = false;
  symbol single_symbol_ = 0;
};

// Index-size estimate in bytes for a sequence with this histogram under its Huffman code.
std::uint64_t estimate_wavelet_bytes(std::span<const std::uint64_t> hist);

}  // namespace bwtmerge
