#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <span>

#include "bwtmerge/extio/multi_file_index.hpp"
#include "bwtmerge/gaparray.hpp"
#include "bwtmerge/parallel/thread_pool.hpp"
#include "bwtmerge/succinct/wavelet_tree.hpp"

namespace bwtmerge {

// Wavelet tree built by p workers over contiguous input ranges. Each range
// writes its bits at per-node offsets from prefix sums of the per-range
// histograms, so the node vectors equal the serial ones bit for bit.
wavelet_tree parallel_wavelet(std::span<const symbol> seq, const huffman_code& code, thread_pool& pool);

// Same over a stored BWT; each worker decodes its range twice (count, then write).
wavelet_tree parallel_wavelet(store& st, const bwt_parts& parts, std::span<const std::uint64_t> hist,
                              const huffman_code& code, thread_pool& pool);

// Stable two-pass LSD radix sort; per-range bucket histograms give every
// worker its scatter offsets. Output equals radix_sort.
void parallel_radix_sort(std::span<std::uint64_t> data, std::uint64_t bound, tracked_vector<std::uint64_t>& scratch,
                         thread_pool& pool);

// Shared increment buffer in front of a gap_accumulator. Slots are claimed
// with fetch_add; the caller whose write completes the buffer flushes it while
// callers that overran the capacity wait for the next epoch.
class shared_gap_buffer {
 public:
  explicit shared_gap_buffer(gap_accumulator& acc);
  void increment(std::uint64_t index);
  // Spill what is left; call after every producer finished.
  void finish();

 private:
  void flush_full();

  gap_accumulator& acc_;
  std::uint64_t capacity_;
  tracked_vector<std::uint64_t> buf_;
  std::atomic<std::uint64_t> fill_{0};
  std::atomic<std::uint64_t> committed_{0};
  std::mutex mu_;
  std::condition_variable cv_;
  std::uint64_t epoch_ = 0;
};

}  // namespace bwtmerge
