#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bwtmerge {

// Elias gamma code as a '0'/'1' string: floor(log z) zeros, then z in binary.
std::string gamma_encode(std::uint64_t z);
// Decodes the codeword starting at pos; returns (z, position after it).
std::pair<std::uint64_t, std::size_t> gamma_decode(std::string_view bits, std::size_t pos);

// Packed helpers used by tests and small in-memory streams.
std::vector<std::uint8_t> gamma_pack(const std::vector<std::uint64_t>& values, std::uint64_t* bit_count = nullptr);
std::vector<std::uint64_t> gamma_unpack(const std::vector<std::uint8_t>& bytes, std::size_t count);

}  // namespace bwtmerge
