#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bwtmerge/extio/format.hpp"

namespace bwtmerge {

using isa_sample = std::pair<std::uint64_t, std::uint64_t>;  // (text position, rank)

// Header: sampling rate, record count. Payload: (position, rank) u64 pairs in rank order.
class isa_writer {
 public:
  isa_writer(store& st, std::string name, std::uint64_t rate);
  ~isa_writer();
  void push(std::uint64_t pos, std::uint64_t rank);
  std::uint64_t size() const { return count_; }
  std::uint64_t close();

 private:
  void drain();

  std::string name_;
  std::uint64_t rate_;
  std::unique_ptr<byte_sink> sink_;
  std::vector<std::uint8_t> buf_;
  std::uint64_t count_ = 0;
  std::uint64_t last_rank_ = 0;
};

class isa_reader {
 public:
  isa_reader(store& st, const std::string& name);
  std::uint64_t rate() const { return rate_; }
  std::uint64_t size() const { return count_; }
  bool at_end() const { return next_ >= count_; }
  isa_sample next();
  // Position before the first record with rank >= r.
  void seek_rank(std::uint64_t r);

 private:
  std::unique_ptr<byte_source> src_;
  std::uint64_t rate_ = 0, count_ = 0, header_bytes_ = 0, next_ = 0;
  std::vector<std::uint8_t> buf_;
  std::uint64_t buf_first_ = 0, buf_count_ = 0;

  isa_sample record(std::uint64_t k) const;
};

std::vector<isa_sample> read_isa(store& st, const std::string& name, std::uint64_t* rate = nullptr);
// Concatenates ISA files whose rank ranges are increasing in the given order.
std::uint64_t concat_isa_files(store& st, const std::vector<std::string>& parts, const std::string& name,
                               std::uint64_t rate);
std::uint64_t write_isa(store& st, const std::string& name, std::uint64_t rate, const std::vector<isa_sample>& s);

}  // namespace bwtmerge
