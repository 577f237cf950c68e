#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bwtmerge/extio/gap_file.hpp"
#include "bwtmerge/memory.hpp"

namespace bwtmerge {

struct gap_options {
  std::uint64_t buffer_capacity = 0;  // 0: max(1024, b_r / ceil(log2 b_r)^2)
  std::uint64_t restart = default_gap_restart;
  std::uint64_t anchor_stride = 0;  // 0: derived from the length
};

std::uint64_t default_gap_buffer(std::uint64_t b_r);

// A finished gap array: in memory or as a gap file (dense or sparse).
struct gap_array {
  std::uint64_t length = 0;
  std::uint64_t sum = 0;
  tracked_vector<std::uint32_t> values;  // in-memory form
  std::string file;                      // external form
  file_kind kind = file_kind::dense_gap;

  bool in_memory() const { return file.empty(); }
};

// Streams G[i], G[i+1], ... of either form.
class gap_reader {
 public:
  gap_reader(store& st, const gap_array& g, std::uint64_t start);
  ~gap_reader();
  std::uint64_t next() {
    if (mem_) return (*mem_)[pos_++];
    ++pos_;
    return dec_->next();
  }
  std::uint64_t position() const { return pos_; }

 private:
  const tracked_vector<std::uint32_t>* mem_ = nullptr;
  std::unique_ptr<gap_file> file_;
  std::unique_ptr<gap_value_decoder> dec_;
  std::uint64_t pos_;
};

std::vector<std::uint64_t> gap_values(store& st, const gap_array& g);

// Stable two-pass LSD radix sort of values < bound using ceil(sqrt(bound)) buckets.
void radix_sort(std::span<std::uint64_t> data, std::uint64_t bound, tracked_vector<std::uint64_t>& scratch);
std::uint64_t radix_buckets(std::uint64_t bound);

// Element-wise sum of two gap files over the same length. The output is
// sparse when the combined sum is at most length/4, dense otherwise.
gap_file_info merge_gap(store& st, const std::string& a, const std::string& b, const std::string& out,
                        const gap_options& opt);

// Buffered increments spilled as sparse/dense gap files and combined by doubling.
class gap_accumulator {
 public:
  using sorter = std::function<void(std::span<std::uint64_t>, std::uint64_t bound, tracked_vector<std::uint64_t>&)>;

  gap_accumulator(store& st, std::uint64_t length, std::uint64_t expected_sum, gap_options opt = {});
  ~gap_accumulator();
  gap_accumulator(const gap_accumulator&) = delete;
  gap_accumulator& operator=(const gap_accumulator&) = delete;

  void increment(std::uint64_t index) {
    if (index >= length_) throw std::out_of_range("gap increment beyond the array length");
    buffer_[fill_++] = index;
    if (fill_ == capacity_) flush();
  }
  std::uint64_t buffered() const { return fill_; }
  std::uint64_t capacity() const { return capacity_; }

  // Sort, collapse and spill a batch of pending increments, then apply the doubling merges.
  void absorb(std::span<std::uint64_t> batch);
  void flush();
  // Replace the radix sort (the parallel driver supplies a multi-threaded one).
  void set_sorter(sorter s) { sorter_ = std::move(s); }

  // Merge everything into one dense gap file; checks the total.
  gap_array finalize();

  // Pending files as (sum, payload bits).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pending() const;
  std::vector<std::string> pending_names() const;
  std::uint64_t peak_pending_bits() const { return peak_bits_; }
  std::uint64_t spills() const { return spills_; }
  std::uint64_t merges() const { return merges_; }

 private:
  struct pending_file {
    std::uint64_t sum;
    std::uint64_t bits;
    std::string name;
  };
  void push_pending(pending_file f);
  pending_file merge_pair(const pending_file& a, const pending_file& b);
  void note_footprint();

  store& st_;
  std::uint64_t length_, expected_;
  gap_options opt_;
  std::uint64_t capacity_;
  tracked_vector<std::uint64_t> buffer_;
  tracked_vector<std::uint64_t> scratch_;
  std::uint64_t fill_ = 0;
  std::vector<pending_file> pending_;
  sorter sorter_;
  std::uint64_t peak_bits_ = 0, spills_ = 0, merges_ = 0;
};

}  // namespace bwtmerge
