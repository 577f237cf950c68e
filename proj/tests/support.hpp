#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bwtmerge/oracle.hpp"
#include "bwtmerge/text.hpp"

namespace testing_support {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed1234ULL);
  return g;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

inline std::vector<std::uint8_t> random_bytes(std::size_t n, unsigned sigma, std::uint8_t base = 'a') {
  std::vector<std::uint8_t> v(n);
  for (auto& c : v) c = static_cast<std::uint8_t>(base + uniform(0, sigma - 1));
  return v;
}

// Binary string over {a,b} from the low n bits of code.
inline std::vector<std::uint8_t> binary_text(std::uint64_t code, unsigned n) {
  std::vector<std::uint8_t> v(n);
  for (unsigned i = 0; i < n; ++i) v[i] = ((code >> i) & 1) ? 'b' : 'a';
  return v;
}

inline std::string fibonacci_word(std::size_t n) {
  std::string a = "a", b = "ab";
  while (b.size() < n) {
    std::string c = b + a;
    a = std::move(b);
    b = std::move(c);
  }
  return b.substr(0, n);
}

inline std::string str(const std::vector<std::uint8_t>& v) { return std::string(v.begin(), v.end()); }

}  // namespace testing_support
