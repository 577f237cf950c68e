#include "bwtmerge/extio/bwt_file.hpp"

namespace bwtmerge {

namespace {

constexpr std::size_t bwt_fields = 5;  // m, d, blocks, payload_bits, table_offset

header_builder bwt_header(const bwt_file_info& info, std::uint64_t table_offset, const huffman_code& code) {
  header_builder h(file_kind::bwt);
  h.u64(info.m);
  h.u64(info.d);
  h.u64(info.blocks);
  h.u64(info.payload_bits);
  h.u64(table_offset);
  h.raw(code.lengths().data(), 256);
  return h;
}

}  // namespace

bwt_writer::bwt_writer(store& st, std::string name, const huffman_code& code, std::uint64_t d)
    : name_(std::move(name)), code_(code), d_(d) {
  if (d_ == 0) throw std::invalid_argument("bwt block size must be positive");
  sink_ = st.create(name_, io_class::bwt);
  auto h = bwt_header({name_, 0, d_, 0, 0}, 0, code_);
  header_bytes_ = h.bytes().size();
  sink_->write(h.bytes().data(), h.bytes().size());
  out_ = std::make_unique<bit_writer>(*sink_);
}

bwt_writer::~bwt_writer() = default;

void bwt_writer::push_run(symbol a, std::uint64_t len) {
  while (len > 0) {
    if (m_ % d_ == 0 || len_ == 0 || a != sym_) {
      push(a);
      --len;
      continue;
    }
    std::uint64_t room = d_ - m_ % d_;
    std::uint64_t k = std::min(room, len);
    len_ += k;
    m_ += k;
    len -= k;
  }
}

bwt_file_info bwt_writer::close() {
  if (closed_) throw std::logic_error("bwt_writer closed twice");
  closed_ = true;
  end_run();
  bwt_file_info info{name_, m_, d_, offsets_.size(), out_->bits()};
  out_->flush();
  std::uint64_t table_offset = sink_->size();
  write_u64_table(*sink_, offsets_);
  auto h = bwt_header(info, table_offset, code_);
  sink_->write_at(0, h.bytes().data(), h.bytes().size());
  sink_->close();
  return info;
}

bwt_file::bwt_file(store& st, const std::string& name) : src_(st.open(name, io_class::bwt)) {
  info_.name = name;
  load();
}

bwt_file::bwt_file(std::unique_ptr<byte_source> src, std::string name) : src_(std::move(src)) {
  info_.name = std::move(name);
  load();
}

void bwt_file::load() {
  header_reader h(*src_, file_kind::bwt);
  info_.m = h.u64();
  info_.d = h.u64();
  info_.blocks = h.u64();
  info_.payload_bits = h.u64();
  std::uint64_t table_offset = h.u64();
  std::array<std::uint8_t, 256> lengths{};
  h.raw(lengths.data(), 256);
  header_bytes_ = h.offset();
  if (info_.d == 0) throw format_error("bwt block size is zero");
  if (info_.blocks != (info_.m + info_.d - 1) / info_.d) throw format_error("bwt block count mismatch");
  if (table_offset < header_bytes_ + (info_.payload_bits + 7) / 8) throw format_error("bwt table overlaps payload");
  bool any = false;
  for (auto l : lengths) any |= l != 0;
  if (any) code_ = huffman_code::from_lengths(lengths);
  offsets_ = read_u64_table(*src_, table_offset, info_.blocks);
  for (std::uint64_t k = 0; k < offsets_.size(); ++k)
    if (offsets_[k] > info_.payload_bits || (k && offsets_[k] < offsets_[k - 1]))
      throw format_error("bwt block table is not monotone");
}

bwt_decoder::bwt_decoder(const bwt_file& f, std::uint64_t start, std::size_t buffer_bytes)
    : f_(f),
      in_(f.source(), f.payload_bit_begin(), f.payload_bit_begin() + f.info().payload_bits, buffer_bytes),
      pos_(start) {
  if (start > f.size()) throw std::out_of_range("bwt decoder start beyond the end");
  if (start == f.size()) return;
  std::uint64_t blk = start / f.block_size();
  in_.seek(f.payload_bit_begin() + f.block_offset(blk));
  std::uint64_t skip = start - blk * f.block_size();
  while (skip > 0) {
    load_run();
    std::uint64_t k = std::min(skip, left_);
    left_ -= k;
    skip -= k;
  }
}

void bwt_decoder::load_run() {
  if (pos_ >= f_.size()) throw format_error("bwt stream overrun");
  sym_ = f_.code().decode(in_);
  left_ = in_.get_gamma();
}

std::vector<symbol> read_bwt(store& st, const std::string& name) {
  bwt_file f(st, name);
  bwt_decoder dec(f, 0);
  std::vector<symbol> out;
  out.reserve(f.size());
  while (!dec.at_end()) {
    auto [a, k] = dec.next_run(f.size());
    out.insert(out.end(), k, a);
  }
  return out;
}

bwt_file_info write_bwt(store& st, const std::string& name, std::span<const symbol> s, std::uint64_t d) {
  std::vector<std::uint64_t> h(256, 0);
  for (symbol a : s) ++h[a];
  huffman_code code;
  if (!s.empty()) code = huffman_code::from_histogram(h);
  bwt_writer w(st, name, code, d);
  w.append(s);
  return w.close();
}

bwt_file_info concat_bwt_files(store& st, const std::vector<std::string>& parts, const std::string& name) {
  if (parts.empty()) throw std::invalid_argument("concat_bwt_files: no parts");
  std::vector<std::unique_ptr<bwt_file>> files;
  for (auto& p : parts) files.push_back(std::make_unique<bwt_file>(st, p));
  const auto& code = files.front()->code();
  const std::uint64_t d = files.front()->block_size();
  for (std::size_t k = 0; k < files.size(); ++k) {
    if (files[k]->block_size() != d || files[k]->code().lengths() != code.lengths())
      throw std::invalid_argument("concat_bwt_files: parts use different codes or block sizes");
    if (k + 1 < files.size() && files[k]->size() % d != 0)
      throw std::invalid_argument("concat_bwt_files: inner part is not block aligned");
  }
  auto sink = st.create(name, io_class::bwt);
  bwt_file_info info{name, 0, d, 0, 0};
  auto h0 = bwt_header(info, 0, code);
  sink->write(h0.bytes().data(), h0.bytes().size());
  std::vector<std::uint64_t> offsets;
  {
    bit_writer out(*sink);
    for (auto& f : files) {
      for (std::uint64_t b = 0; b < f->info().blocks; ++b) offsets.push_back(out.bits() + f->block_offset(b));
      bit_reader in(f->source(), f->payload_bit_begin(), f->payload_bit_begin() + f->info().payload_bits);
      copy_bits(in, f->info().payload_bits, out);
      info.m += f->size();
    }
    info.payload_bits = out.bits();
    out.flush();
  }
  info.blocks = offsets.size();
  std::uint64_t table_offset = sink->size();
  write_u64_table(*sink, offsets);
  auto h = bwt_header(info, table_offset, code);
  sink->write_at(0, h.bytes().data(), h.bytes().size());
  sink->close();
  return info;
}

}  // namespace bwtmerge
