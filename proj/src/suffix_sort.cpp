#include "bwtmerge/suffix_sort.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace bwtmerge {

namespace {

void bucket_bounds(const std::int32_t* s, std::int64_t n, std::int32_t k, std::int32_t* bkt, bool ends) {
  std::fill(bkt, bkt + k, 0);
  for (std::int64_t i = 0; i < n; ++i) ++bkt[s[i]];
  std::int32_t sum = 0;
  for (std::int32_t c = 0; c < k; ++c) {
    sum += bkt[c];
    bkt[c] = ends ? sum : sum - bkt[c];
  }
}

}  // namespace

void sais(const std::int32_t* s, std::int32_t* sa, std::int64_t n, std::int32_t k) {
  if (n == 1) {
    sa[0] = 0;
    return;
  }
  tracked_vector<std::uint8_t> type(static_cast<std::size_t>(n));  // 1 = S-type
  type[n - 1] = 1;
  for (std::int64_t i = n - 2; i >= 0; --i)
    type[i] = (s[i] < s[i + 1] || (s[i] == s[i + 1] && type[i + 1])) ? 1 : 0;
  auto is_lms = [&](std::int64_t i) { return i > 0 && type[i] && !type[i - 1]; };
  tracked_vector<std::int32_t> bkt(static_cast<std::size_t>(k));

  auto induce = [&]() {
    bucket_bounds(s, n, k, bkt.data(), false);
    for (std::int64_t i = 0; i < n; ++i) {
      std::int64_t j = sa[i] - 1;
      if (sa[i] > 0 && !type[j]) sa[bkt[s[j]]++] = static_cast<std::int32_t>(j);
    }
    bucket_bounds(s, n, k, bkt.data(), true);
    for (std::int64_t i = n - 1; i >= 0; --i) {
      std::int64_t j = sa[i] - 1;
      if (sa[i] > 0 && type[j]) sa[--bkt[s[j]]] = static_cast<std::int32_t>(j);
    }
  };

  // Sort LMS substrings.
  std::fill(sa, sa + n, -1);
  bucket_bounds(s, n, k, bkt.data(), true);
  for (std::int64_t i = 1; i < n; ++i)
    if (is_lms(i)) sa[--bkt[s[i]]] = static_cast<std::int32_t>(i);
  induce();

  std::int64_t n1 = 0;
  for (std::int64_t i = 0; i < n; ++i)
    if (is_lms(sa[i])) sa[n1++] = sa[i];

  // Name LMS substrings.
  std::fill(sa + n1, sa + n, -1);
  std::int32_t name = 0;
  std::int64_t prev = -1;
  for (std::int64_t i = 0; i < n1; ++i) {
    std::int64_t pos = sa[i];
    bool diff = false;
    for (std::int64_t d = 0; d < n; ++d) {
      if (prev == -1 || s[pos + d] != s[prev + d] || type[pos + d] != type[prev + d]) {
        diff = true;
        break;
      }
      if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) break;
    }
    if (diff) {
      ++name;
      prev = pos;
    }
    sa[n1 + pos / 2] = name - 1;
  }
  for (std::int64_t i = n - 1, j = n - 1; i >= n1; --i)
    if (sa[i] >= 0) sa[j--] = sa[i];

  std::int32_t* s1 = sa + n - n1;
  std::int32_t* sa1 = sa;
  if (name < n1) {
    sais(s1, sa1, n1, name);
  } else {
    for (std::int64_t i = 0; i < n1; ++i) sa1[s1[i]] = static_cast<std::int32_t>(i);
  }

  // Induce the full order from the sorted LMS suffixes.
  for (std::int64_t i = 1, j = 0; i < n; ++i)
    if (is_lms(i)) s1[j++] = static_cast<std::int32_t>(i);
  for (std::int64_t i = 0; i < n1; ++i) sa1[i] = s1[sa1[i]];
  std::fill(sa + n1, sa + n, -1);
  bucket_bounds(s, n, k, bkt.data(), true);
  for (std::int64_t i = n1 - 1; i >= 0; --i) {
    std::int32_t j = sa[i];
    sa[i] = -1;
    sa[--bkt[s[j]]] = j;
  }
  induce();
}

tracked_vector<std::int32_t> suffix_array(std::span<const symbol> w) {
  if (w.size() >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw std::length_error("suffix_array: string too long for 32-bit indices");
  const std::int64_t n = static_cast<std::int64_t>(w.size()) + 1;
  tracked_vector<std::int32_t> s(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < w.size(); ++i) s[i] = static_cast<std::int32_t>(w[i]) + 1;
  s[n - 1] = 0;
  tracked_vector<std::int32_t> sa(static_cast<std::size_t>(n));
  sais(s.data(), sa.data(), n, 257);
  s = {};
  sa.erase(sa.begin());
  return sa;
}

tracked_vector<std::int32_t> lcp_array(std::span<const symbol> w, std::span<const std::int32_t> sa) {
  const std::int64_t n = static_cast<std::int64_t>(w.size());
  tracked_vector<std::int32_t> rank(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::int32_t>(i);
  tracked_vector<std::int32_t> lcp(static_cast<std::size_t>(n), 0);
  std::int64_t h = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (rank[i] > 0) {
      std::int64_t j = sa[rank[i] - 1];
      while (i + h < n && j + h < n && w[i + h] == w[j + h]) ++h;
      lcp[rank[i]] = static_cast<std::int32_t>(h);
      if (h > 0) --h;
    } else {
      h = 0;
    }
  }
  return lcp;
}

}  // namespace bwtmerge
