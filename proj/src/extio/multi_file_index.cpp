#include "bwtmerge/extio/multi_file_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace bwtmerge {

multi_file_index::multi_file_index(const std::vector<std::uint64_t>& counts) {
  prefix_.reserve(counts.size() + 1);
  prefix_.push_back(0);
  for (auto c : counts) prefix_.push_back(prefix_.back() + c);
}

std::pair<std::size_t, std::uint64_t> multi_file_index::locate(std::uint64_t offset) const {
  if (offset >= total()) throw std::out_of_range("multi-file offset beyond the total");
  // Last part whose begin is <= offset; empty parts are skipped by upper_bound.
  auto it = std::upper_bound(prefix_.begin(), prefix_.end(), offset);
  std::size_t k = static_cast<std::size_t>(it - prefix_.begin()) - 1;
  return {k, offset - prefix_[k]};
}

void multi_file_index::set_sparse_tables(const std::vector<std::uint64_t>& spans,
                                         const std::vector<std::uint64_t>& nonzeros) {
  if (spans.size() != parts() || nonzeros.size() != parts())
    throw std::invalid_argument("sparse tables must have one entry per part");
  span_prefix_.assign(1, 0);
  nz_prefix_.assign(1, 0);
  for (std::size_t k = 0; k < parts(); ++k) {
    span_prefix_.push_back(span_prefix_.back() + spans[k]);
    nz_prefix_.push_back(nz_prefix_.back() + nonzeros[k]);
  }
}

std::size_t multi_file_index::part_of_index(std::uint64_t i) const {
  if (span_prefix_.empty() || i >= span_prefix_.back()) throw std::out_of_range("gap index beyond the spans");
  auto it = std::upper_bound(span_prefix_.begin(), span_prefix_.end(), i);
  return static_cast<std::size_t>(it - span_prefix_.begin()) - 1;
}

bwt_parts make_bwt_parts(const std::vector<bwt_file_info>& infos) {
  bwt_parts p;
  std::vector<std::uint64_t> counts;
  for (auto& i : infos) {
    p.names.push_back(i.name);
    counts.push_back(i.m);
  }
  p.index = multi_file_index(counts);
  return p;
}

multi_bwt_decoder::multi_bwt_decoder(store& st, const bwt_parts& parts, std::uint64_t start, std::size_t buffer_bytes)
    : st_(st), parts_(parts), buffer_bytes_(buffer_bytes), pos_(start) {
  if (start > parts.size()) throw std::out_of_range("multi-part decoder start beyond the end");
  if (start == parts.size()) return;
  auto [k, local] = parts.index.locate(start);
  open(k, local);
}

multi_bwt_decoder::~multi_bwt_decoder() = default;

void multi_bwt_decoder::open(std::size_t part, std::uint64_t local) {
  dec_.reset();
  file_ = std::make_unique<bwt_file>(st_, parts_.names[part]);
  dec_ = std::make_unique<bwt_decoder>(*file_, local, buffer_bytes_);
  part_ = part;
  left_in_part_ = file_->size() - local;
}

void multi_bwt_decoder::open_next() {
  if (at_end()) throw format_error("multi-part bwt stream overrun");
  std::size_t k = file_ ? part_ + 1 : 0;
  while (parts_.index.part_size(k) == 0) ++k;
  open(k, 0);
}

std::vector<symbol> read_bwt_parts(store& st, const bwt_parts& parts) {
  std::vector<symbol> out;
  out.reserve(parts.size());
  multi_bwt_decoder dec(st, parts, 0);
  while (!dec.at_end()) {
    auto [a, k] = dec.next_run(parts.size());
    out.insert(out.end(), k, a);
  }
  return out;
}

void remove_bwt_parts(store& st, const bwt_parts& parts) {
  for (auto& n : parts.names) st.remove(n);
}

}  // namespace bwtmerge
