#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bwtmerge/bitio.hpp"
#include "bwtmerge/extio/format.hpp"

namespace bwtmerge {

// Header: bit count. Payload: packed bits, MSB first.
class gt_writer {
 public:
  gt_writer(store& st, std::string name);
  ~gt_writer();
  void push(bool b) {
    out_->put_bit(b);
    ++n_;
  }
  std::uint64_t size() const { return n_; }
  std::uint64_t close();

 private:
  std::string name_;
  std::unique_ptr<byte_sink> sink_;
  std::unique_ptr<bit_writer> out_;
  std::uint64_t n_ = 0;
};

class gt_file {
 public:
  gt_file(store& st, const std::string& name);
  std::uint64_t size() const { return n_; }
  std::uint64_t payload_bit_begin() const { return header_bytes_ * 8; }
  const byte_source& source() const { return *src_; }

 private:
  std::unique_ptr<byte_source> src_;
  std::uint64_t n_ = 0;
  std::uint64_t header_bytes_ = 0;
};

class gt_reader {
 public:
  gt_reader(const gt_file& f, std::uint64_t start, std::size_t buffer_bytes = 1 << 16);
  bool next() { return in_.get_bit(); }
  bool at_end() const { return in_.at_end(); }

 private:
  bit_reader in_;
};

// Yields bits end-1, end-2, ..., 0 by loading fixed chunks from the back.
class gt_reverse_reader {
 public:
  gt_reverse_reader(const gt_file& f, std::uint64_t end, std::size_t chunk_bytes = 1 << 16);
  bool next();
  std::uint64_t remaining() const { return pos_; }

 private:
  const gt_file& f_;
  std::uint64_t pos_;         // bits still to deliver
  std::uint64_t chunk_bit_ = 0;  // bit index of the loaded chunk's first byte
  std::vector<std::uint8_t> chunk_;
  std::size_t chunk_bytes_;
};

std::vector<std::uint8_t> read_gt(store& st, const std::string& name);
std::uint64_t write_gt(store& st, const std::string& name, const std::vector<std::uint8_t>& bits);

}  // namespace bwtmerge
