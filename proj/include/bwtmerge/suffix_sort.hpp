#pragma once

#include <cstdint>
#include <span>

#include "bwtmerge/memory.hpp"
#include "bwtmerge/text.hpp"

namespace bwtmerge {

// Induced sorting. s[n-1] must be a unique minimum 0; symbols are < k.
void sais(const std::int32_t* s, std::int32_t* sa, std::int64_t n, std::int32_t k);

// Suffix array of a finite string whose end acts as a symbol smaller than every other.
tracked_vector<std::int32_t> suffix_array(std::span<const symbol> w);

// lcp[j] = LCP of suffixes sa[j-1] and sa[j] of w; lcp[0] = 0.
tracked_vector<std::int32_t> lcp_array(std::span<const symbol> w, std::span<const std::int32_t> sa);

}  // namespace bwtmerge
