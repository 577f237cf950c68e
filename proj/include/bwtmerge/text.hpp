#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bwtmerge {

using symbol = std::uint8_t;

// Immutable byte text with circular access. Storage is either owned or a
// read-only file mapping; the mapping is not charged to the memory tracker.
class text {
 public:
  text() = default;
  static text from_bytes(std::vector<symbol> bytes);
  static text from_string(std::string_view s);
  static text map_file(const std::filesystem::path& path);

  std::uint64_t size() const { return n_; }
  unsigned sigma() const { return sigma_; }
  const symbol* data() const { return data_; }
  std::span<const symbol> bytes() const { return {data_, static_cast<std::size_t>(n_)}; }

  symbol operator[](std::uint64_t i) const { return data_[i]; }
  // t~[i] = t[i mod n]
  symbol circ(std::uint64_t i) const { return data_[i < n_ ? i : i % n_]; }

  // 256-entry symbol histogram.
  std::vector<std::uint64_t> histogram() const;

 private:
  struct holder;
  std::shared_ptr<holder> hold_;
  const symbol* data_ = nullptr;
  std::uint64_t n_ = 0;
  unsigned sigma_ = 0;

  void init(const symbol* p, std::uint64_t n);
};

symbol circular_char(const text& t, std::uint64_t i);

struct interval {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t length() const { return end - begin; }
  bool operator==(const interval&) const = default;
};

// Partition of [0,n) into nu blocks: mu of length b followed by nu-mu of length b-1.
struct block_plan {
  std::uint64_t n = 0;
  std::uint64_t b_target = 0;
  std::uint64_t b = 0;
  std::uint64_t nu = 0;
  std::uint64_t mu = 0;

  std::uint64_t start(std::uint64_t i) const { return i < mu ? i * b : mu * b + (i - mu) * (b - 1); }
  std::uint64_t length(std::uint64_t i) const { return i < mu ? b : b - 1; }
  interval block(std::uint64_t i) const { return {start(i), start(i) + length(i)}; }
  std::uint64_t successor(std::uint64_t i) const { return i + 1 == nu ? 0 : i + 1; }
  // Block containing text position x < n.
  std::uint64_t block_of(std::uint64_t x) const;
  std::vector<interval> boundaries() const;

  bool operator==(const block_plan&) const = default;
};

// b = ceil(n / ceil(n / b')), nu = ceil(n / b'). b' is raised to 2 when n >= 2.
block_plan plan_blocks(std::uint64_t n, std::uint64_t b_target);

// Arbitrary contiguous partition of [0, n) into nonempty blocks.
struct partition {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> starts;  // count() + 1 entries, last = n

  std::uint64_t count() const { return starts.size() - 1; }
  std::uint64_t start(std::uint64_t i) const { return starts[i]; }
  std::uint64_t length(std::uint64_t i) const { return starts[i + 1] - starts[i]; }
  std::uint64_t successor(std::uint64_t i) const { return i + 1 == count() ? 0 : i + 1; }
  std::uint64_t max_length() const;
  std::uint64_t block_of(std::uint64_t x) const;
};

partition to_partition(const block_plan& plan);
// Splits every block of length L into min(k, L) pieces of near-equal length.
partition refine(const partition& p, std::uint64_t k);

}  // namespace bwtmerge
