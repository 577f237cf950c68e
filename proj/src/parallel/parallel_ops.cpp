#include "bwtmerge/parallel/parallel_ops.hpp"

#include <algorithm>
#include <array>

namespace bwtmerge {

namespace {

using histogram = std::array<std::uint64_t, 256>;

// Shared core: `feed(k, f)` calls f(a) for each symbol of range k in order.
template <class Feed>
wavelet_tree build_parallel(const huffman_code& code, std::uint64_t ranges, thread_pool& pool, Feed feed) {
  auto shape = wavelet_shape::from_code(code);
  std::vector<histogram> H(ranges);
  pool.run(ranges, [&](std::uint64_t k) {
    histogram h{};
    feed(k, [&](symbol a) { ++h[a]; });
    H[k] = h;
  });
  histogram total{};
  for (auto& h : H)
    for (unsigned a = 0; a < 256; ++a) total[a] += h[a];
  for (unsigned a = 0; a < 256; ++a)
    if (total[a] && !code.has(static_cast<symbol>(a)))
      throw std::invalid_argument("parallel_wavelet: symbol without codeword");

  // P[k][v]: first bit of node v written by range k.
  const std::uint32_t nodes = shape.node_count;
  std::vector<std::vector<std::uint64_t>> P(ranges, std::vector<std::uint64_t>(nodes, 0));
  std::vector<std::uint64_t> size(nodes, 0);
  for (std::uint64_t k = 0; k < ranges; ++k) {
    auto own = shape.node_sizes(H[k]);
    for (std::uint32_t v = 0; v < nodes; ++v) {
      P[k][v] = size[v];
      size[v] += own[v];
    }
  }
  std::vector<tracked_vector<std::uint64_t>> words(nodes);
  for (std::uint32_t v = 0; v < nodes; ++v) words[v].assign((size[v] + 63) / 64, 0);

  if (nodes > 0) {
    pool.run(ranges, [&](std::uint64_t k) {
      auto pos = P[k];
      feed(k, [&](symbol a) {
        for (auto s : shape.path(a)) {
          std::uint64_t i = pos[s.node]++;
          // Neighbouring ranges can share the boundary word.
          if (s.bit) std::atomic_ref<std::uint64_t>(words[s.node][i >> 6]).fetch_or(1ULL << (i & 63));
        }
      });
    });
  }
  std::vector<append_bit_vector> vecs(nodes);
  pool.run(nodes, [&](std::uint64_t v) { vecs[v] = append_bit_vector::from_words(std::move(words[v]), size[v], false); });
  return wavelet_tree(code, std::move(shape), std::move(vecs), total);
}

}  // namespace

wavelet_tree parallel_wavelet(std::span<const symbol> seq, const huffman_code& code, thread_pool& pool) {
  auto b = split_evenly(seq.size(), pool.size());
  return build_parallel(code, pool.size(), pool, [&](std::uint64_t k, auto&& f) {
    for (std::uint64_t i = b[k]; i < b[k + 1]; ++i) f(seq[i]);
  });
}

wavelet_tree parallel_wavelet(store& st, const bwt_parts& parts, std::span<const std::uint64_t> hist,
                              const huffman_code& code, thread_pool& pool) {
  (void)hist;
  auto b = split_evenly(parts.size(), pool.size());
  return build_parallel(code, pool.size(), pool, [&](std::uint64_t k, auto&& f) {
    if (b[k] == b[k + 1]) return;
    multi_bwt_decoder dec(st, parts, b[k]);
    for (std::uint64_t left = b[k + 1] - b[k]; left > 0;) {
      auto [a, run] = dec.next_run(left);
      for (std::uint64_t j = 0; j < run; ++j) f(a);
      left -= run;
    }
  });
}

void parallel_radix_sort(std::span<std::uint64_t> data, std::uint64_t bound, tracked_vector<std::uint64_t>& scratch,
                         thread_pool& pool) {
  const std::uint64_t B = radix_buckets(bound), p = pool.size();
  if (p == 1 || data.size() < 2 * p) {
    radix_sort(data, bound, scratch);
    return;
  }
  scratch.resize(data.size());
  auto rb = split_evenly(data.size(), p);
  std::vector<std::vector<std::uint64_t>> cnt(p, std::vector<std::uint64_t>(B));
  auto pass = [&](std::span<const std::uint64_t> in, std::span<std::uint64_t> out, auto key) {
    pool.run(p, [&](std::uint64_t k) {
      auto& c = cnt[k];
      std::fill(c.begin(), c.end(), 0);
      for (std::uint64_t i = rb[k]; i < rb[k + 1]; ++i) ++c[key(in[i])];
    });
    // Bucket-major, range-minor prefix sums keep the placement stable.
    std::uint64_t acc = 0;
    for (std::uint64_t b = 0; b < B; ++b)
      for (std::uint64_t k = 0; k < p; ++k) {
        std::uint64_t c = cnt[k][b];
        cnt[k][b] = acc;
        acc += c;
      }
    pool.run(p, [&](std::uint64_t k) {
      auto& c = cnt[k];
      for (std::uint64_t i = rb[k]; i < rb[k + 1]; ++i) out[c[key(in[i])]++] = in[i];
    });
  };
  std::span<std::uint64_t> tmp(scratch.data(), data.size());
  pass(data, tmp, [B](std::uint64_t v) { return v % B; });
  pass(tmp, data, [B](std::uint64_t v) { return v / B; });
}

shared_gap_buffer::shared_gap_buffer(gap_accumulator& acc) : acc_(acc), capacity_(acc.capacity()) {
  buf_.resize(capacity_);
}

void shared_gap_buffer::increment(std::uint64_t index) {
  for (;;) {
    std::uint64_t seen;
    {
      std::lock_guard lk(mu_);
      seen = epoch_;
    }
    std::uint64_t k = fill_.fetch_add(1);
    if (k < capacity_) {
      buf_[k] = index;
      if (committed_.fetch_add(1) + 1 == capacity_) flush_full();
      return;
    }
    std::unique_lock lk(mu_);
    cv_.wait(lk, [&] { return epoch_ != seen; });
  }
}

void shared_gap_buffer::flush_full() {
  acc_.absorb({buf_.data(), capacity_});
  committed_.store(0);
  std::lock_guard lk(mu_);
  fill_.store(0);
  ++epoch_;
  cv_.notify_all();
}

void shared_gap_buffer::finish() {
  std::uint64_t k = std::min(fill_.load(), capacity_);
  acc_.absorb({buf_.data(), k});
  committed_.store(0);
  fill_.store(0);
}

}  // namespace bwtmerge
