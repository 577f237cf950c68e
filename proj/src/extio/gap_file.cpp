#include "bwtmerge/extio/gap_file.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace bwtmerge {

namespace {

// Dense: l, s, e, payload_bits, restarts, table_offset.
// Sparse: l, s, k, j, payload_bits, anchors, table_offset.
header_builder dense_header(const gap_file_info& info, std::uint64_t e, std::uint64_t restarts, std::uint64_t table) {
  header_builder h(file_kind::dense_gap);
  for (auto v : {info.length, info.sum, e, info.payload_bits, restarts, table}) h.u64(v);
  return h;
}

header_builder sparse_header(const gap_file_info& info, std::uint64_t j, std::uint64_t anchors, std::uint64_t table) {
  header_builder h(file_kind::sparse_gap);
  for (auto v : {info.length, info.sum, info.nonzeros, j, info.payload_bits, anchors, table}) h.u64(v);
  return h;
}

}  // namespace

std::uint64_t sparse_anchor_stride(std::uint64_t n) {
  std::uint64_t lg = n <= 1 ? 1 : 64 - static_cast<std::uint64_t>(std::countl_zero(n - 1));
  return std::max<std::uint64_t>(64, lg * lg);
}

dense_gap_writer::dense_gap_writer(store& st, std::string name, std::uint64_t e) : name_(std::move(name)), e_(e) {
  if (e_ == 0) throw std::invalid_argument("restart interval must be positive");
  sink_ = st.create(name_, io_class::gap);
  auto h = dense_header({}, e_, 0, 0);
  sink_->write(h.bytes().data(), h.bytes().size());
  out_ = std::make_unique<bit_writer>(*sink_);
}

dense_gap_writer::~dense_gap_writer() = default;

gap_file_info dense_gap_writer::close() {
  gap_file_info info{name_, file_kind::dense_gap, count_, sum_, nonzeros_, out_->bits()};
  out_->flush();
  std::uint64_t table = sink_->size();
  write_u64_table(*sink_, restarts_);
  auto h = dense_header(info, e_, restarts_.size(), table);
  sink_->write_at(0, h.bytes().data(), h.bytes().size());
  sink_->close();
  return info;
}

sparse_gap_writer::sparse_gap_writer(store& st, std::string name, std::uint64_t length, std::uint64_t j)
    : name_(std::move(name)), length_(length), j_(j) {
  if (j_ == 0) throw std::invalid_argument("anchor stride must be positive");
  sink_ = st.create(name_, io_class::gap);
  auto h = sparse_header({}, j_, 0, 0);
  sink_->write(h.bytes().data(), h.bytes().size());
  out_ = std::make_unique<bit_writer>(*sink_);
}

sparse_gap_writer::~sparse_gap_writer() = default;

void sparse_gap_writer::push(std::uint64_t index, std::uint64_t value) {
  if (value == 0) throw std::invalid_argument("sparse gap entries must be non-zero");
  if (static_cast<std::int64_t>(index) <= last_ || index >= length_)
    throw std::invalid_argument("sparse gap indices must increase and stay below the length");
  // The first pair's anchor (bit 0) is implicit.
  if (k_ % j_ == 0 && k_ > 0) {
    anchors_.push_back(out_->bits());
    anchors_.push_back(index);
  }
  out_->put_gamma(static_cast<std::uint64_t>(static_cast<std::int64_t>(index) - last_));
  out_->put_gamma(value);
  last_ = static_cast<std::int64_t>(index);
  ++k_;
  sum_ += value;
}

gap_file_info sparse_gap_writer::close() {
  gap_file_info info{name_, file_kind::sparse_gap, length_, sum_, k_, out_->bits()};
  out_->flush();
  std::uint64_t table = sink_->size();
  write_u64_table(*sink_, anchors_);
  auto h = sparse_header(info, j_, anchors_.size() / 2, table);
  sink_->write_at(0, h.bytes().data(), h.bytes().size());
  sink_->close();
  return info;
}

gap_file::gap_file(store& st, const std::string& name) : src_(st.open(name, io_class::gap)) {
  info_.name = name;
  info_.kind = peek_kind(*src_);
  if (info_.kind == file_kind::dense_gap) {
    header_reader h(*src_, file_kind::dense_gap);
    info_.length = h.u64();
    info_.sum = h.u64();
    e_ = h.u64();
    info_.payload_bits = h.u64();
    std::uint64_t restarts = h.u64(), table = h.u64();
    header_bytes_ = h.offset();
    if (e_ == 0 || restarts != (info_.length + e_ - 1) / e_) throw format_error("dense gap restart table mismatch");
    table_ = read_u64_table(*src_, table, restarts);
    info_.nonzeros = 0;  // not stored for dense files
  } else if (info_.kind == file_kind::sparse_gap) {
    header_reader h(*src_, file_kind::sparse_gap);
    info_.length = h.u64();
    info_.sum = h.u64();
    info_.nonzeros = h.u64();
    j_ = h.u64();
    info_.payload_bits = h.u64();
    std::uint64_t anchors = h.u64(), table = h.u64();
    header_bytes_ = h.offset();
    const std::uint64_t stored = info_.nonzeros ? (info_.nonzeros + j_ - 1) / j_ - 1 : 0;
    if (j_ == 0 || anchors != stored) throw format_error("sparse gap anchor table mismatch");
    table_ = read_u64_table(*src_, table, 2 * anchors);
    if (info_.nonzeros) {
      bit_reader first(*src_, payload_bit_begin(), payload_bit_begin() + info_.payload_bits, 64);
      table_.insert(table_.begin(), {0, first.get_gamma() - 1});
    }
  } else {
    throw format_error(std::string("not a gap file: ") + file_kind_name(info_.kind));
  }
  for (std::size_t k = 0; k < table_.size(); k += info_.kind == file_kind::sparse_gap ? 2 : 1)
    if (table_[k] > info_.payload_bits) throw format_error("gap table offset beyond payload");
}

gap_value_decoder::gap_value_decoder(const gap_file& f, std::uint64_t start, std::size_t buffer_bytes)
    : f_(f),
      in_(f.source(), f.payload_bit_begin(), f.payload_bit_begin() + f.info().payload_bits, buffer_bytes),
      pos_(start) {
  if (start > f.length()) throw std::out_of_range("gap decoder start beyond the end");
  if (f.kind() == file_kind::dense_gap) {
    if (start == f.length()) return;
    std::uint64_t r = start / f.restart_interval();
    in_.seek(f.payload_bit_begin() + f.restarts()[r]);
    for (std::uint64_t i = r * f.restart_interval(); i < start; ++i) in_.get_gamma();
    return;
  }
  if (f.nonzeros() == 0) return;
  // Largest anchor with index <= start, then skip pairs below start.
  std::uint64_t lo = 0, hi = f.anchor_count();
  while (hi - lo > 1) {
    std::uint64_t mid = (lo + hi) / 2;
    if (f.anchor(mid).second <= start) lo = mid; else hi = mid;
  }
  auto [bit, idx] = f.anchor(lo);
  in_.seek(f.payload_bit_begin() + bit);
  in_.get_gamma();
  nz_index_ = idx;
  nz_value_ = in_.get_gamma();
  nz_read_ = lo * f.anchor_stride() + 1;
  have_nz_ = true;
  while (have_nz_ && nz_index_ < start) advance_pair();
}

void gap_value_decoder::advance_pair() {
  if (nz_read_ >= f_.nonzeros()) {
    have_nz_ = false;
    return;
  }
  nz_index_ += in_.get_gamma();
  nz_value_ = in_.get_gamma();
  ++nz_read_;
}

std::uint64_t gap_value_decoder::next() {
  if (pos_ >= f_.length()) throw format_error("gap stream overrun");
  if (f_.kind() == file_kind::dense_gap) {
    ++pos_;
    return in_.get_gamma() - 1;
  }
  std::uint64_t i = pos_++;
  if (!have_nz_ || nz_index_ != i) return 0;
  std::uint64_t v = nz_value_;
  advance_pair();
  return v;
}

gap_pair_decoder::gap_pair_decoder(const gap_file& f, std::uint64_t start, std::size_t buffer_bytes)
    : f_(f), in_(f.source(), f.payload_bit_begin(), f.payload_bit_begin() + f.info().payload_bits, buffer_bytes) {
  if (start > f.length()) throw std::out_of_range("gap decoder start beyond the end");
  if (f.kind() == file_kind::dense_gap) {
    pos_ = start;
    if (start == f.length()) return;
    std::uint64_t r = start / f.restart_interval();
    in_.seek(f.payload_bit_begin() + f.restarts()[r]);
    for (std::uint64_t i = r * f.restart_interval(); i < start; ++i) in_.get_gamma();
    return;
  }
  read_ = f.nonzeros();
  if (f.nonzeros() == 0) return;
  std::uint64_t lo = 0, hi = f.anchor_count();
  while (hi - lo > 1) {
    std::uint64_t mid = (lo + hi) / 2;
    if (f.anchor(mid).second <= start) lo = mid; else hi = mid;
  }
  auto [bit, idx] = f.anchor(lo);
  in_.seek(f.payload_bit_begin() + bit);
  read_ = lo * f.anchor_stride();
  // The anchored pair's delta is replaced by its absolute index.
  last_ = idx;
  first_ = true;
  // Skip pairs below start; remember the first one at or after it.
  std::uint64_t mark_bit = in_.position();
  while (read_ < f.nonzeros()) {
    mark_bit = in_.position();
    std::uint64_t d = in_.get_gamma();
    std::uint64_t index = first_ ? idx : last_ + d;
    in_.get_gamma();
    if (index >= start) {
      in_.seek(mark_bit);
      break;
    }
    last_ = index;
    first_ = false;
    ++read_;
  }
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> gap_pair_decoder::next() {
  if (f_.kind() == file_kind::dense_gap) {
    while (pos_ < f_.length()) {
      std::uint64_t v = in_.get_gamma() - 1;
      std::uint64_t i = pos_++;
      if (v) return std::make_pair(i, v);
    }
    return std::nullopt;
  }
  if (read_ >= f_.nonzeros()) return std::nullopt;
  std::uint64_t d = in_.get_gamma();
  std::uint64_t index = first_ ? last_ : last_ + d;
  std::uint64_t v = in_.get_gamma();
  first_ = false;
  last_ = index;
  ++read_;
  return std::make_pair(index, v);
}

std::vector<std::uint64_t> read_gap(store& st, const std::string& name) {
  gap_file f(st, name);
  std::vector<std::uint64_t> g(f.length(), 0);
  gap_pair_decoder dec(f, 0);
  while (auto p = dec.next()) g[p->first] = p->second;
  return g;
}

gap_file_info write_dense_gap(store& st, const std::string& name, std::span<const std::uint64_t> g, std::uint64_t e) {
  dense_gap_writer w(st, name, e);
  for (auto v : g) w.push(v);
  return w.close();
}

gap_file_info write_sparse_gap(store& st, const std::string& name, std::span<const std::uint64_t> g, std::uint64_t j) {
  sparse_gap_writer w(st, name, g.size(), j);
  for (std::uint64_t i = 0; i < g.size(); ++i)
    if (g[i]) w.push(i, g[i]);
  return w.close();
}

std::uint64_t gap_encoded_bits(const gap_file& f) {
  const std::uint64_t stored = f.anchor_count() ? f.anchor_count() - 1 : 0;
  return f.info().payload_bits + 128 * stored;
}

double gap_size_bound_bits(file_kind kind, std::uint64_t l, std::uint64_t s, std::uint64_t k) {
  if (kind == file_kind::dense_gap) return s <= l ? 3.0 * double(l) : 5.0 * double(s);
  if (k == 0) return 0;
  const double kk = double(k);
  return 2 * kk * (1 + std::log2(double(s) * double(l) / (kk * kk))) + 64 * kk;
}

}  // namespace bwtmerge
