#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bwtmerge/bitio.hpp"
#include "bwtmerge/extio/store.hpp"

namespace bwtmerge {

// Every file starts with "BWTB", a kind byte, a version byte and two reserved
// bytes, followed by little-endian u64 header fields.
enum class file_kind : std::uint8_t { bwt = 1, dense_gap = 2, sparse_gap = 3, gt = 4, isa = 5 };

inline constexpr std::uint8_t format_version = 1;
inline constexpr std::size_t prefix_bytes = 8;

const char* file_kind_name(file_kind k);

void store_u64(std::uint8_t* p, std::uint64_t v);
std::uint64_t load_u64(const std::uint8_t* p);

// Builds a header in memory; written once up front and patched at close.
class header_builder {
 public:
  explicit header_builder(file_kind k);
  void u64(std::uint64_t v);
  void raw(const void* p, std::size_t k);
  void set_u64(std::size_t field, std::uint64_t v);  // field index among u64 fields
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::vector<std::size_t> field_offsets_;
};

// Reads the prefix and u64 fields of a header.
class header_reader {
 public:
  header_reader(const byte_source& src, file_kind expected);
  std::uint64_t u64();
  void raw(void* p, std::size_t k);
  std::uint64_t offset() const { return off_; }

 private:
  const byte_source& src_;
  std::uint64_t off_ = prefix_bytes;
};

// Kind stored in the prefix; throws format_error on a bad magic or version.
file_kind peek_kind(const byte_source& src);

// Table of u64 values stored at a byte offset.
std::vector<std::uint64_t> read_u64_table(const byte_source& src, std::uint64_t offset, std::uint64_t count);
void write_u64_table(byte_sink& sink, const std::vector<std::uint64_t>& values);

}  // namespace bwtmerge
