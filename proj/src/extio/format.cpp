#include "bwtmerge/extio/format.hpp"

#include <cstring>

namespace bwtmerge {

const char* file_kind_name(file_kind k) {
  switch (k) {
    case file_kind::bwt: return "bwt";
    case file_kind::dense_gap: return "dense-gap";
    case file_kind::sparse_gap: return "sparse-gap";
    case file_kind::gt: return "gt";
    case file_kind::isa: return "isa";
  }
  return "unknown";
}

void store_u64(std::uint8_t* p, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) p[k] = static_cast<std::uint8_t>(v >> (8 * k));
}

std::uint64_t load_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(p[k]) << (8 * k);
  return v;
}

header_builder::header_builder(file_kind k) {
  bytes_ = {'B', 'W', 'T', 'B', static_cast<std::uint8_t>(k), format_version, 0, 0};
}

void header_builder::u64(std::uint64_t v) {
  field_offsets_.push_back(bytes_.size());
  bytes_.resize(bytes_.size() + 8);
  store_u64(bytes_.data() + field_offsets_.back(), v);
}

void header_builder::raw(const void* p, std::size_t k) {
  auto b = static_cast<const std::uint8_t*>(p);
  bytes_.insert(bytes_.end(), b, b + k);
}

void header_builder::set_u64(std::size_t field, std::uint64_t v) { store_u64(bytes_.data() + field_offsets_.at(field), v); }

file_kind peek_kind(const byte_source& src) {
  std::uint8_t p[prefix_bytes];
  if (src.read_at(0, p, prefix_bytes) != prefix_bytes) throw format_error("file too short for a header");
  if (std::memcmp(p, "BWTB", 4) != 0) throw format_error("bad magic");
  if (p[5] != format_version) throw format_error("unsupported format version " + std::to_string(p[5]));
  if (p[4] < 1 || p[4] > 5) throw format_error("unknown file kind " + std::to_string(p[4]));
  return static_cast<file_kind>(p[4]);
}

header_reader::header_reader(const byte_source& src, file_kind expected) : src_(src) {
  auto k = peek_kind(src);
  if (k != expected)
    throw format_error(std::string("expected a ") + file_kind_name(expected) + " file, found " + file_kind_name(k));
}

std::uint64_t header_reader::u64() {
  std::uint8_t b[8];
  raw(b, 8);
  return load_u64(b);
}

void header_reader::raw(void* p, std::size_t k) {
  if (src_.read_at(off_, p, k) != k) throw format_error("truncated header");
  off_ += k;
}

std::vector<std::uint64_t> read_u64_table(const byte_source& src, std::uint64_t offset, std::uint64_t count) {
  std::vector<std::uint8_t> raw(count * 8);
  if (src.read_at(offset, raw.data(), raw.size()) != raw.size()) throw format_error("truncated offset table");
  std::vector<std::uint64_t> out(count);
  for (std::uint64_t i = 0; i < count; ++i) out[i] = load_u64(raw.data() + 8 * i);
  return out;
}

void write_u64_table(byte_sink& sink, const std::vector<std::uint64_t>& values) {
  std::vector<std::uint8_t> raw(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) store_u64(raw.data() + 8 * i, values[i]);
  sink.write(raw.data(), raw.size());
}

}  // namespace bwtmerge
