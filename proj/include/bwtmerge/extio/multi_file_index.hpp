#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bwtmerge/extio/bwt_file.hpp"

namespace bwtmerge {

// Prefix sums over per-part element counts; maps a global offset to (part, local offset).
class multi_file_index {
 public:
  multi_file_index() : prefix_{0} {}
  explicit multi_file_index(const std::vector<std::uint64_t>& counts);

  std::size_t parts() const { return prefix_.size() - 1; }
  std::uint64_t total() const { return prefix_.back(); }
  std::uint64_t part_begin(std::size_t k) const { return prefix_.at(k); }
  std::uint64_t part_size(std::size_t k) const { return prefix_.at(k + 1) - prefix_.at(k); }
  std::pair<std::size_t, std::uint64_t> locate(std::uint64_t offset) const;

  // Sparse gap parts: gap-array span represented by each part and its non-zero count.
  void set_sparse_tables(const std::vector<std::uint64_t>& spans, const std::vector<std::uint64_t>& nonzeros);
  std::uint64_t span_begin(std::size_t k) const { return span_prefix_.at(k); }
  std::uint64_t nonzeros_before(std::size_t k) const { return nz_prefix_.at(k); }
  // Part whose span contains gap index i.
  std::size_t part_of_index(std::uint64_t i) const;

 private:
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> span_prefix_, nz_prefix_;
};

// A node BWT stored as one or more BWT files in order.
struct bwt_parts {
  std::vector<std::string> names;
  multi_file_index index;

  static bwt_parts single(const bwt_file_info& info) { return {{info.name}, multi_file_index({info.m})}; }
  std::uint64_t size() const { return index.total(); }
};

bwt_parts make_bwt_parts(const std::vector<bwt_file_info>& infos);

// Sequential decoder over all parts from a global start offset.
class multi_bwt_decoder {
 public:
  multi_bwt_decoder(store& st, const bwt_parts& parts, std::uint64_t start, std::size_t buffer_bytes = 1 << 16);
  ~multi_bwt_decoder();

  std::uint64_t position() const { return pos_; }
  bool at_end() const { return pos_ >= parts_.size(); }
  symbol next() {
    if (left_in_part_ == 0) open_next();
    --left_in_part_;
    ++pos_;
    return dec_->next();
  }
  std::pair<symbol, std::uint64_t> next_run(std::uint64_t max) {
    if (left_in_part_ == 0) open_next();
    auto r = dec_->next_run(std::min(max, left_in_part_));
    left_in_part_ -= r.second;
    pos_ += r.second;
    return r;
  }

 private:
  void open(std::size_t part, std::uint64_t local);
  void open_next();

  store& st_;
  const bwt_parts& parts_;
  std::size_t buffer_bytes_;
  std::size_t part_ = 0;
  std::uint64_t pos_ = 0;
  std::uint64_t left_in_part_ = 0;
  std::unique_ptr<bwt_file> file_;
  std::unique_ptr<bwt_decoder> dec_;
};

std::vector<symbol> read_bwt_parts(store& st, const bwt_parts& parts);
void remove_bwt_parts(store& st, const bwt_parts& parts);

}  // namespace bwtmerge
