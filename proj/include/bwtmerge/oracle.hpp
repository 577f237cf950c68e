#pragma once

// Brute-force references computed straight from the definitions. Nothing here
// depends on the construction pipeline.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bwtmerge::oracle {

using bytes = std::vector<std::uint8_t>;

bytes to_bytes(std::string_view s);

// -1/0/+1 comparing circular suffixes x and y: 2n symbols, then the index.
int compare_circular(const bytes& t, std::uint64_t x, std::uint64_t y);
// Common prefix of circular suffixes x and y, capped at 2n.
std::uint64_t circular_lcp(const bytes& t, std::uint64_t x, std::uint64_t y);

std::vector<std::uint64_t> naive_circular_sa(const bytes& t);
bytes naive_bwt(const bytes& t);

// Prefix doubling over rotations for texts too long for the pairwise sort.
// Ranks after doubling past n separate unequal rotations; equal ones keep index order.
std::vector<std::uint64_t> doubling_circular_sa(const bytes& t);
bytes doubling_bwt(const bytes& t);
// Text of a primitive circular text from its BWT and the rank of rotation 0 (LF walk).
bytes invert_bwt(const bytes& bwt, std::uint64_t first_rank);

// Sorted positions of [s, s+L) and the LCPs of adjacent ones (lcp[0] = 0).
std::vector<std::uint64_t> naive_block_sa(const bytes& t, std::uint64_t s, std::uint64_t L);
std::vector<std::uint64_t> naive_block_lcp(const bytes& t, std::uint64_t s, std::uint64_t L);
// Bit j-1 for j in [1, L): suffix s+j greater than suffix s.
std::vector<std::uint8_t> naive_gt(const bytes& t, std::uint64_t s, std::uint64_t L);

// Left [a, m), right [m, e): G[x] = right suffixes with exactly x smaller left suffixes.
std::vector<std::uint64_t> naive_gap(const bytes& t, std::uint64_t a, std::uint64_t m, std::uint64_t e);
std::vector<std::uint64_t> naive_gap(const bytes& t, std::uint64_t split);
// Number of suffixes in [a, m) smaller than the suffix at y.
std::uint64_t naive_rank(const bytes& t, std::uint64_t a, std::uint64_t m, std::uint64_t y);

// Longest proper border of every prefix.
std::vector<std::uint64_t> naive_borders(const bytes& w);
bool has_period(const bytes& w, std::uint64_t p);
std::uint64_t naive_min_period(const bytes& w);
// Minimal period if at most |w|/2, else 0.
std::uint64_t naive_short_period(const bytes& w);

// Window of length len read circularly from s.
bytes circular_window(const bytes& t, std::uint64_t s, std::uint64_t len);
// Smallest p in [1, L] such that the window of L + 2p symbols from s has period p; 0 if none.
std::uint64_t naive_propagated(const bytes& t, std::uint64_t s, std::uint64_t L);
// t = alpha^k with alpha the minimal period, |alpha| <= bmax, k > 1.
bool naive_is_power(const bytes& t, std::uint64_t bmax, std::uint64_t* root = nullptr);

}  // namespace bwtmerge::oracle
