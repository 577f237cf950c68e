#include "bwtmerge/gaparray.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace bwtmerge {

std::uint64_t default_gap_buffer(std::uint64_t b_r) {
  std::uint64_t lg = b_r <= 1 ? 1 : 64 - static_cast<std::uint64_t>(std::countl_zero(b_r - 1));
  return std::max<std::uint64_t>(1024, b_r / (lg * lg));
}

gap_reader::gap_reader(store& st, const gap_array& g, std::uint64_t start) : pos_(start) {
  if (start > g.length) throw std::out_of_range("gap reader start beyond the end");
  if (g.in_memory()) {
    mem_ = &g.values;
    return;
  }
  file_ = std::make_unique<gap_file>(st, g.file);
  dec_ = std::make_unique<gap_value_decoder>(*file_, start);
}

gap_reader::~gap_reader() = default;

std::vector<std::uint64_t> gap_values(store& st, const gap_array& g) {
  if (!g.in_memory()) return read_gap(st, g.file);
  return {g.values.begin(), g.values.end()};
}

std::uint64_t radix_buckets(std::uint64_t bound) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(bound)));
  while (r * r < bound) ++r;
  while (r > 1 && (r - 1) * (r - 1) >= bound) --r;
  return std::max<std::uint64_t>(r, 1);
}

void radix_sort(std::span<std::uint64_t> data, std::uint64_t bound, tracked_vector<std::uint64_t>& scratch) {
  const std::uint64_t B = radix_buckets(bound);
  scratch.resize(data.size());
  std::vector<std::uint64_t> count(B + 1);
  auto pass = [&](std::span<const std::uint64_t> in, std::span<std::uint64_t> out, auto key) {
    std::fill(count.begin(), count.end(), 0);
    for (auto v : in) ++count[key(v) + 1];
    for (std::uint64_t k = 1; k <= B; ++k) count[k] += count[k - 1];
    for (auto v : in) out[count[key(v)]++] = v;
  };
  std::span<std::uint64_t> tmp(scratch.data(), data.size());
  pass(data, tmp, [B](std::uint64_t v) { return v % B; });
  pass(tmp, data, [B](std::uint64_t v) { return v / B; });
}

namespace {

std::uint64_t anchor_stride_for(const gap_options& opt, std::uint64_t length) {
  return opt.anchor_stride ? opt.anchor_stride : sparse_anchor_stride(length);
}

bool sparse_fits(std::uint64_t sum, std::uint64_t length) { return 4 * sum <= length; }

}  // namespace

gap_file_info merge_gap(store& st, const std::string& a, const std::string& b, const std::string& out,
                        const gap_options& opt) {
  gap_file fa(st, a), fb(st, b);
  if (fa.length() != fb.length()) throw std::invalid_argument("merge_gap: arrays differ in length");
  const std::uint64_t len = fa.length(), sum = fa.sum() + fb.sum();
  gap_pair_decoder da(fa, 0), db(fb, 0);
  auto pa = da.next(), pb = db.next();
  auto step = [&](auto&& emit) {
    while (pa || pb) {
      if (pa && (!pb || pa->first < pb->first)) {
        emit(pa->first, pa->second);
        pa = da.next();
      } else if (pb && (!pa || pb->first < pa->first)) {
        emit(pb->first, pb->second);
        pb = db.next();
      } else {
        emit(pa->first, pa->second + pb->second);
        pa = da.next();
        pb = db.next();
      }
    }
  };
  if (sparse_fits(sum, len)) {
    sparse_gap_writer w(st, out, len, anchor_stride_for(opt, len));
    step([&](std::uint64_t i, std::uint64_t v) { w.push(i, v); });
    return w.close();
  }
  dense_gap_writer w(st, out, opt.restart);
  step([&](std::uint64_t i, std::uint64_t v) {
    w.push_zeros(i - w.size());
    w.push(v);
  });
  w.push_zeros(len - w.size());
  return w.close();
}

gap_accumulator::gap_accumulator(store& st, std::uint64_t length, std::uint64_t expected_sum, gap_options opt)
    : st_(st), length_(length), expected_(expected_sum), opt_(opt) {
  if (length_ == 0) throw std::invalid_argument("gap array length must be positive");
  capacity_ = opt_.buffer_capacity ? opt_.buffer_capacity : default_gap_buffer(expected_sum);
  buffer_.resize(capacity_);
  sorter_ = [](std::span<std::uint64_t> d, std::uint64_t bound, tracked_vector<std::uint64_t>& s) {
    radix_sort(d, bound, s);
  };
}

gap_accumulator::~gap_accumulator() {
  for (auto& p : pending_) st_.remove(p.name);
}

void gap_accumulator::flush() {
  absorb({buffer_.data(), fill_});
  fill_ = 0;
}

void gap_accumulator::absorb(std::span<std::uint64_t> batch) {
  if (batch.empty()) return;
  for (auto v : batch)
    if (v >= length_) throw std::out_of_range("gap increment beyond the array length");
  sorter_(batch, length_, scratch_);
  const std::uint64_t sum = batch.size();
  auto name = st_.unique_name("gap-run");
  gap_file_info info;
  auto runs = [&](auto&& emit) {
    for (std::size_t k = 0; k < batch.size();) {
      std::size_t e = k;
      while (e < batch.size() && batch[e] == batch[k]) ++e;
      emit(batch[k], e - k);
      k = e;
    }
  };
  // Spills are always sparse; density is decided when arrays are merged.
  sparse_gap_writer w(st_, name, length_, anchor_stride_for(opt_, length_));
  runs([&](std::uint64_t i, std::uint64_t c) { w.push(i, c); });
  info = w.close();
  ++spills_;
  push_pending({sum, info.payload_bits, name});
}

void gap_accumulator::push_pending(pending_file f) {
  pending_.push_back(std::move(f));
  note_footprint();
  while (pending_.size() >= 2 && pending_[pending_.size() - 1].sum == pending_[pending_.size() - 2].sum) {
    auto b = pending_.back();
    pending_.pop_back();
    auto a = pending_.back();
    pending_.pop_back();
    pending_.push_back(merge_pair(a, b));
  }
}

gap_accumulator::pending_file gap_accumulator::merge_pair(const pending_file& a, const pending_file& b) {
  auto name = st_.unique_name("gap-merge");
  auto info = merge_gap(st_, a.name, b.name, name, opt_);
  ++merges_;
  // Both inputs and the output coexist until the inputs are dropped.
  peak_bits_ = std::max(peak_bits_, [&] {
    std::uint64_t t = info.payload_bits;
    for (auto& p : pending_) t += p.bits;
    return t + a.bits + b.bits;
  }());
  st_.remove(a.name);
  st_.remove(b.name);
  return {a.sum + b.sum, info.payload_bits, name};
}

void gap_accumulator::note_footprint() {
  std::uint64_t t = 0;
  for (auto& p : pending_) t += p.bits;
  peak_bits_ = std::max(peak_bits_, t);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> gap_accumulator::pending() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (auto& p : pending_) out.emplace_back(p.sum, p.bits);
  return out;
}

std::vector<std::string> gap_accumulator::pending_names() const {
  std::vector<std::string> out;
  for (auto& p : pending_) out.push_back(p.name);
  return out;
}

gap_array gap_accumulator::finalize() {
  flush();
  // Combine the smallest arrays first.
  while (pending_.size() > 1) {
    std::sort(pending_.begin(), pending_.end(), [](auto& x, auto& y) { return x.sum > y.sum; });
    auto b = pending_.back();
    pending_.pop_back();
    auto a = pending_.back();
    pending_.pop_back();
    pending_.push_back(merge_pair(a, b));
  }
  gap_array g;
  g.length = length_;
  g.kind = file_kind::dense_gap;
  if (pending_.empty()) {
    g.file = st_.unique_name("gap-final");
    dense_gap_writer w(st_, g.file, opt_.restart);
    w.push_zeros(length_);
    w.close();
  } else {
    auto last = pending_.back();
    pending_.clear();
    gap_file f(st_, last.name);
    if (f.kind() == file_kind::dense_gap) {
      g.file = last.name;
    } else {
      g.file = st_.unique_name("gap-final");
      dense_gap_writer w(st_, g.file, opt_.restart);
      gap_pair_decoder dec(f, 0);
      while (auto p = dec.next()) {
        w.push_zeros(p->first - w.size());
        w.push(p->second);
      }
      w.push_zeros(length_ - w.size());
      w.close();
      st_.remove(last.name);
    }
    g.sum = last.sum;
  }
  if (g.sum != expected_)
    throw std::logic_error("gap array sums to " + std::to_string(g.sum) + ", expected " + std::to_string(expected_));
  return g;
}

}  // namespace bwtmerge
