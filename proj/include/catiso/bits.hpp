#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace catiso {

// A bit sequence, most significant bit first when read as a number.
using Bits = std::vector<bool>;

// Number of bits needed to write values 0..n-1, i.e. ceil(log2 n); 0 for n <= 1.
unsigned ceil_log2(std::uint64_t n);

// Width-`width` big-endian encoding of `value`.
Bits bits_from_uint(std::uint64_t value, std::size_t width);

// Reads bits [first, first+len) as an unsigned big-endian integer (len <= 64).
std::uint64_t bits_to_uint(const Bits& bits, std::size_t first, std::size_t len);
inline std::uint64_t bits_to_uint(const Bits& bits) { return bits_to_uint(bits, 0, bits.size()); }

Bits parse_bits(std::string_view text);
std::string format_bits(const Bits& bits);

}  // namespace catiso
