#include "bwtmerge/extio/isa_file.hpp"

#include <algorithm>

namespace bwtmerge {

namespace {
constexpr std::size_t record_bytes = 16;
constexpr std::size_t buffer_records = 4096;
}  // namespace

isa_writer::isa_writer(store& st, std::string name, std::uint64_t rate) : name_(std::move(name)), rate_(rate) {
  if (rate_ == 0) throw std::invalid_argument("isa sampling rate must be positive");
  sink_ = st.create(name_, io_class::isa);
  header_builder h(file_kind::isa);
  h.u64(rate_);
  h.u64(0);
  sink_->write(h.bytes().data(), h.bytes().size());
  buf_.reserve(buffer_records * record_bytes);
}

isa_writer::~isa_writer() = default;

void isa_writer::push(std::uint64_t pos, std::uint64_t rank) {
  if (count_ > 0 && rank <= last_rank_) throw std::invalid_argument("isa samples must be in increasing rank order");
  last_rank_ = rank;
  std::size_t at = buf_.size();
  buf_.resize(at + record_bytes);
  store_u64(buf_.data() + at, pos);
  store_u64(buf_.data() + at + 8, rank);
  ++count_;
  if (buf_.size() >= buffer_records * record_bytes) drain();
}

void isa_writer::drain() {
  if (!buf_.empty()) sink_->write(buf_.data(), buf_.size());
  buf_.clear();
}

std::uint64_t isa_writer::close() {
  drain();
  header_builder h(file_kind::isa);
  h.u64(rate_);
  h.u64(count_);
  sink_->write_at(0, h.bytes().data(), h.bytes().size());
  sink_->close();
  return count_;
}

isa_reader::isa_reader(store& st, const std::string& name) : src_(st.open(name, io_class::isa)) {
  header_reader h(*src_, file_kind::isa);
  rate_ = h.u64();
  count_ = h.u64();
  header_bytes_ = h.offset();
  if (rate_ == 0) throw format_error("isa sampling rate is zero");
  if (src_->size() < header_bytes_ + count_ * record_bytes) throw format_error("isa payload truncated");
}

isa_sample isa_reader::next() {
  if (next_ >= count_) throw format_error("isa stream overrun");
  if (next_ < buf_first_ || next_ >= buf_first_ + buf_count_) {
    buf_first_ = next_;
    buf_count_ = std::min<std::uint64_t>(buffer_records, count_ - next_);
    buf_.resize(buf_count_ * record_bytes);
    src_->read_at(header_bytes_ + buf_first_ * record_bytes, buf_.data(), buf_.size());
  }
  const std::uint8_t* p = buf_.data() + (next_ - buf_first_) * record_bytes;
  ++next_;
  return {load_u64(p), load_u64(p + 8)};
}

isa_sample isa_reader::record(std::uint64_t k) const {
  std::uint8_t b[record_bytes];
  if (src_->read_at(header_bytes_ + k * record_bytes, b, record_bytes) != record_bytes)
    throw format_error("isa payload truncated");
  return {load_u64(b), load_u64(b + 8)};
}

void isa_reader::seek_rank(std::uint64_t r) {
  std::uint64_t lo = 0, hi = count_;
  while (lo < hi) {
    std::uint64_t mid = (lo + hi) / 2;
    if (record(mid).second < r) lo = mid + 1; else hi = mid;
  }
  next_ = lo;
  buf_count_ = 0;
}

std::vector<isa_sample> read_isa(store& st, const std::string& name, std::uint64_t* rate) {
  isa_reader r(st, name);
  if (rate) *rate = r.rate();
  std::vector<isa_sample> out;
  out.reserve(r.size());
  while (!r.at_end()) out.push_back(r.next());
  return out;
}

std::uint64_t write_isa(store& st, const std::string& name, std::uint64_t rate, const std::vector<isa_sample>& s) {
  isa_writer w(st, name, rate);
  for (auto [pos, rank] : s) w.push(pos, rank);
  return w.close();
}

std::uint64_t concat_isa_files(store& st, const std::vector<std::string>& parts, const std::string& name,
                               std::uint64_t rate) {
  isa_writer w(st, name, rate);
  for (auto& p : parts) {
    isa_reader r(st, p);
    if (r.rate() != rate) throw format_error("isa parts disagree on the sampling rate");
    while (!r.at_end()) {
      auto [pos, rank] = r.next();
      w.push(pos, rank);
    }
  }
  return w.close();
}

}  // namespace bwtmerge
