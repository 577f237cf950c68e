#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bwtmerge/bitio.hpp"
#include "bwtmerge/extio/format.hpp"

namespace bwtmerge {

inline constexpr std::uint64_t default_gap_restart = 4096;

// Anchor stride for sparse files: max(64, ceil(log2 n)^2).
std::uint64_t sparse_anchor_stride(std::uint64_t n);

struct gap_file_info {
  std::string name;
  file_kind kind = file_kind::dense_gap;
  std::uint64_t length = 0;  // l
  std::uint64_t sum = 0;     // s
  std::uint64_t nonzeros = 0;
  std::uint64_t payload_bits = 0;
};

// Dense: gamma(G[i] + 1) for every i; restart offset every e values.
class dense_gap_writer {
 public:
  dense_gap_writer(store& st, std::string name, std::uint64_t e = default_gap_restart);
  ~dense_gap_writer();
  void push(std::uint64_t g) {
    if (count_ % e_ == 0) restarts_.push_back(out_->bits());
    out_->put_gamma(g + 1);
    ++count_;
    sum_ += g;
    nonzeros_ += g != 0;
  }
  void push_zeros(std::uint64_t k) {
    for (; k > 0; --k) push(0);
  }
  std::uint64_t size() const { return count_; }
  gap_file_info close();

 private:
  std::string name_;
  std::uint64_t e_;
  std::unique_ptr<byte_sink> sink_;
  std::unique_ptr<bit_writer> out_;
  std::vector<std::uint64_t> restarts_;
  std::uint64_t count_ = 0, sum_ = 0, nonzeros_ = 0;
};

// Sparse: interleaved gamma(index delta) gamma(value) per non-zero entry, the
// first delta being index + 1; anchor (bit position, index) every j entries.
class sparse_gap_writer {
 public:
  sparse_gap_writer(store& st, std::string name, std::uint64_t length, std::uint64_t j);
  ~sparse_gap_writer();
  void push(std::uint64_t index, std::uint64_t value);
  std::uint64_t nonzeros() const { return k_; }
  gap_file_info close();

 private:
  std::string name_;
  std::uint64_t length_, j_;
  std::unique_ptr<byte_sink> sink_;
  std::unique_ptr<bit_writer> out_;
  std::vector<std::uint64_t> anchors_;  // bitpos, index pairs
  std::uint64_t k_ = 0, sum_ = 0;
  std::int64_t last_ = -1;
};

// Opened gap file of either kind.
class gap_file {
 public:
  gap_file(store& st, const std::string& name);

  file_kind kind() const { return info_.kind; }
  const gap_file_info& info() const { return info_; }
  std::uint64_t length() const { return info_.length; }
  std::uint64_t sum() const { return info_.sum; }
  std::uint64_t nonzeros() const { return info_.nonzeros; }
  std::uint64_t restart_interval() const { return e_; }
  std::uint64_t anchor_stride() const { return j_; }
  const std::vector<std::uint64_t>& restarts() const { return table_; }  // dense only
  // Sparse anchors as (bit offset, index).
  std::pair<std::uint64_t, std::uint64_t> anchor(std::uint64_t a) const { return {table_[2 * a], table_[2 * a + 1]}; }
  std::uint64_t anchor_count() const { return info_.kind == file_kind::sparse_gap ? table_.size() / 2 : 0; }
  std::uint64_t payload_bit_begin() const { return header_bytes_ * 8; }
  const byte_source& source() const { return *src_; }

 private:
  std::unique_ptr<byte_source> src_;
  gap_file_info info_;
  std::uint64_t e_ = 0, j_ = 0;
  std::vector<std::uint64_t> table_;
  std::uint64_t header_bytes_ = 0;
};

// Streams G[i], G[i+1], ... from either representation.
class gap_value_decoder {
 public:
  gap_value_decoder(const gap_file& f, std::uint64_t start, std::size_t buffer_bytes = 1 << 16);
  std::uint64_t position() const { return pos_; }
  bool at_end() const { return pos_ >= f_.length(); }
  std::uint64_t next();

 private:
  void advance_pair();

  const gap_file& f_;
  bit_reader in_;
  std::uint64_t pos_;
  // Sparse state: next non-zero entry at or after pos_.
  std::uint64_t nz_index_ = 0, nz_value_ = 0, nz_read_ = 0;
  bool have_nz_ = false;
};

// Streams the non-zero (index, value) pairs with index >= start.
class gap_pair_decoder {
 public:
  gap_pair_decoder(const gap_file& f, std::uint64_t start, std::size_t buffer_bytes = 1 << 16);
  std::optional<std::pair<std::uint64_t, std::uint64_t>> next();

 private:
  const gap_file& f_;
  bit_reader in_;
  std::uint64_t pos_ = 0;    // dense: next index
  std::uint64_t read_ = 0;   // sparse: pairs consumed
  std::uint64_t last_ = 0;   // sparse: index of the previous pair
  bool first_ = true;
};

std::vector<std::uint64_t> read_gap(store& st, const std::string& name);
gap_file_info write_dense_gap(store& st, const std::string& name, std::span<const std::uint64_t> g,
                              std::uint64_t e = default_gap_restart);
gap_file_info write_sparse_gap(store& st, const std::string& name, std::span<const std::uint64_t> g,
                               std::uint64_t j);

// Encoded size: payload bits, plus the anchor table for sparse files.
std::uint64_t gap_encoded_bits(const gap_file& f);
// Size bound for l entries summing to s with k nonzeros: dense 3l bits when
// s <= l and 5s otherwise; sparse 2k(1 + log2(s*l/k^2)) + 64k.
double gap_size_bound_bits(file_kind kind, std::uint64_t l, std::uint64_t s, std::uint64_t k);

}  // namespace bwtmerge
