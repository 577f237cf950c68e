#include "bwtmerge/extio/gt_file.hpp"

#include <algorithm>

namespace bwtmerge {

gt_writer::gt_writer(store& st, std::string name) : name_(std::move(name)) {
  sink_ = st.create(name_, io_class::gt);
  header_builder h(file_kind::gt);
  h.u64(0);
  sink_->write(h.bytes().data(), h.bytes().size());
  out_ = std::make_unique<bit_writer>(*sink_);
}

gt_writer::~gt_writer() = default;

std::uint64_t gt_writer::close() {
  out_->flush();
  header_builder h(file_kind::gt);
  h.u64(n_);
  sink_->write_at(0, h.bytes().data(), h.bytes().size());
  sink_->close();
  return n_;
}

gt_file::gt_file(store& st, const std::string& name) : src_(st.open(name, io_class::gt)) {
  header_reader h(*src_, file_kind::gt);
  n_ = h.u64();
  header_bytes_ = h.offset();
  if (src_->size() < header_bytes_ + (n_ + 7) / 8) throw format_error("gt payload truncated");
}

gt_reader::gt_reader(const gt_file& f, std::uint64_t start, std::size_t buffer_bytes)
    : in_(f.source(), f.payload_bit_begin(), f.payload_bit_begin() + f.size(), buffer_bytes) {
  if (start > f.size()) throw std::out_of_range("gt reader start beyond the end");
  in_.seek(f.payload_bit_begin() + start);
}

gt_reverse_reader::gt_reverse_reader(const gt_file& f, std::uint64_t end, std::size_t chunk_bytes)
    : f_(f), pos_(end), chunk_bytes_(std::max<std::size_t>(chunk_bytes, 8)) {
  if (end > f.size()) throw std::out_of_range("gt reverse reader end beyond the end");
  chunk_bit_ = pos_ + 1;  // nothing loaded
}

bool gt_reverse_reader::next() {
  if (pos_ == 0) throw format_error("gt stream underrun");
  std::uint64_t i = --pos_;
  if (i < chunk_bit_ || i >= chunk_bit_ + chunk_.size() * 8) {
    std::uint64_t last_byte = i / 8;
    std::uint64_t first_byte = last_byte + 1 >= chunk_bytes_ ? last_byte + 1 - chunk_bytes_ : 0;
    chunk_.resize(last_byte + 1 - first_byte);
    std::uint64_t off = f_.payload_bit_begin() / 8 + first_byte;
    if (f_.source().read_at(off, chunk_.data(), chunk_.size()) != chunk_.size()) throw format_error("gt payload truncated");
    chunk_bit_ = first_byte * 8;
  }
  std::uint64_t r = i - chunk_bit_;
  return (chunk_[r / 8] >> (7 - r % 8)) & 1;
}

std::vector<std::uint8_t> read_gt(store& st, const std::string& name) {
  gt_file f(st, name);
  gt_reader r(f, 0);
  std::vector<std::uint8_t> out(f.size());
  for (auto& b : out) b = r.next();
  return out;
}

std::uint64_t write_gt(store& st, const std::string& name, const std::vector<std::uint8_t>& bits) {
  gt_writer w(st, name);
  for (auto b : bits) w.push(b != 0);
  return w.close();
}

}  // namespace bwtmerge
