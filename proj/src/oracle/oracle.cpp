#include "bwtmerge/oracle.hpp"

#include <algorithm>

namespace bwtmerge::oracle {

bytes to_bytes(std::string_view s) { return bytes(s.begin(), s.end()); }

int compare_circular(const bytes& t, std::uint64_t x, std::uint64_t y) {
  const std::uint64_t n = t.size();
  for (std::uint64_t d = 0; d < 2 * n; ++d) {
    auto a = t[(x + d) % n], b = t[(y + d) % n];
    if (a != b) return a < b ? -1 : 1;
  }
  return x < y ? -1 : (x > y ? 1 : 0);
}

std::uint64_t circular_lcp(const bytes& t, std::uint64_t x, std::uint64_t y) {
  const std::uint64_t n = t.size();
  std::uint64_t d = 0;
  while (d < 2 * n && t[(x + d) % n] == t[(y + d) % n]) ++d;
  return d;
}

std::vector<std::uint64_t> naive_circular_sa(const bytes& t) {
  std::vector<std::uint64_t> sa(t.size());
  for (std::uint64_t i = 0; i < sa.size(); ++i) sa[i] = i;
  std::sort(sa.begin(), sa.end(), [&](auto x, auto y) { return compare_circular(t, x, y) < 0; });
  return sa;
}

bytes naive_bwt(const bytes& t) {
  const std::uint64_t n = t.size();
  bytes out;
  for (auto i : naive_circular_sa(t)) out.push_back(t[(i + n - 1) % n]);
  return out;
}

std::vector<std::uint64_t> doubling_circular_sa(const bytes& t) {
  const std::uint64_t n = t.size();
  std::vector<std::uint64_t> sa(n), rank(t.begin(), t.end()), next(n);
  for (std::uint64_t i = 0; i < n; ++i) sa[i] = i;
  for (std::uint64_t h = 1;; h *= 2) {
    auto key = [&](std::uint64_t i) { return std::pair(rank[i], rank[(i + h) % n]); };
    std::sort(sa.begin(), sa.end(), [&](auto x, auto y) { return key(x) < key(y); });
    next[sa[0]] = 0;
    for (std::uint64_t k = 1; k < n; ++k) next[sa[k]] = next[sa[k - 1]] + (key(sa[k - 1]) < key(sa[k]) ? 1 : 0);
    rank.swap(next);
    if (2 * h >= n) break;
  }
  std::sort(sa.begin(), sa.end(), [&](auto x, auto y) { return std::pair(rank[x], x) < std::pair(rank[y], y); });
  return sa;
}

bytes doubling_bwt(const bytes& t) {
  const std::uint64_t n = t.size();
  bytes out;
  out.reserve(n);
  for (auto i : doubling_circular_sa(t)) out.push_back(t[(i + n - 1) % n]);
  return out;
}

bytes invert_bwt(const bytes& bwt, std::uint64_t first_rank) {
  const std::uint64_t n = bwt.size();
  std::vector<std::uint64_t> C(257, 0);
  std::vector<std::uint32_t> occ(n);
  for (std::uint64_t k = 0; k < n; ++k) occ[k] = static_cast<std::uint32_t>(C[bwt[k] + 1]++);
  for (unsigned a = 0; a < 256; ++a) C[a + 1] += C[a];
  bytes t(n);
  std::uint64_t r = first_rank;
  for (std::uint64_t k = n; k-- > 0;) {
    t[k] = bwt[r];
    r = C[bwt[r]] + occ[r];
  }
  return t;
}

std::vector<std::uint64_t> naive_block_sa(const bytes& t, std::uint64_t s, std::uint64_t L) {
  std::vector<std::uint64_t> sa;
  for (std::uint64_t x = s; x < s + L; ++x) sa.push_back(x);
  std::sort(sa.begin(), sa.end(), [&](auto x, auto y) { return compare_circular(t, x, y) < 0; });
  return sa;
}

std::vector<std::uint64_t> naive_block_lcp(const bytes& t, std::uint64_t s, std::uint64_t L) {
  auto sa = naive_block_sa(t, s, L);
  std::vector<std::uint64_t> lcp(sa.size(), 0);
  for (std::size_t j = 1; j < sa.size(); ++j) lcp[j] = circular_lcp(t, sa[j - 1], sa[j]);
  return lcp;
}

std::vector<std::uint8_t> naive_gt(const bytes& t, std::uint64_t s, std::uint64_t L) {
  std::vector<std::uint8_t> gt;
  for (std::uint64_t j = 1; j < L; ++j) gt.push_back(compare_circular(t, s + j, s) > 0 ? 1 : 0);
  return gt;
}

std::uint64_t naive_rank(const bytes& t, std::uint64_t a, std::uint64_t m, std::uint64_t y) {
  std::uint64_t r = 0;
  for (std::uint64_t x = a; x < m; ++x)
    if (compare_circular(t, x, y) < 0) ++r;
  return r;
}

std::vector<std::uint64_t> naive_gap(const bytes& t, std::uint64_t a, std::uint64_t m, std::uint64_t e) {
  std::vector<std::uint64_t> g(m - a + 1, 0);
  for (std::uint64_t y = m; y < e; ++y) ++g[naive_rank(t, a, m, y)];
  return g;
}

std::vector<std::uint64_t> naive_gap(const bytes& t, std::uint64_t split) { return naive_gap(t, 0, split, t.size()); }

std::vector<std::uint64_t> naive_borders(const bytes& w) {
  std::vector<std::uint64_t> b(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t k = i; k-- > 0;) {
      if (std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k + 1),
                     w.begin() + static_cast<std::ptrdiff_t>(i - k))) {
        b[i] = k + 1;
        break;
      }
    }
  return b;
}

bool has_period(const bytes& w, std::uint64_t p) {
  for (std::uint64_t i = 0; i + p < w.size(); ++i)
    if (w[i] != w[i + p]) return false;
  return true;
}

std::uint64_t naive_min_period(const bytes& w) {
  for (std::uint64_t p = 1; p < w.size(); ++p)
    if (has_period(w, p)) return p;
  return w.size();
}

std::uint64_t naive_short_period(const bytes& w) {
  std::uint64_t p = naive_min_period(w);
  return p <= w.size() / 2 ? p : 0;
}

bytes circular_window(const bytes& t, std::uint64_t s, std::uint64_t len) {
  bytes w;
  for (std::uint64_t x = 0; x < len; ++x) w.push_back(t[(s + x) % t.size()]);
  return w;
}

std::uint64_t naive_propagated(const bytes& t, std::uint64_t s, std::uint64_t L) {
  for (std::uint64_t p = 1; p <= L; ++p)
    if (has_period(circular_window(t, s, L + 2 * p), p)) return p;
  return 0;
}

bool naive_is_power(const bytes& t, std::uint64_t bmax, std::uint64_t* root) {
  std::uint64_t n = t.size();
  for (std::uint64_t q = 1; q < n; ++q) {
    if (n % q) continue;
    if (has_period(t, q)) {
      if (root) *root = q;
      return q <= bmax;
    }
  }
  return false;
}

}  // namespace bwtmerge::oracle
