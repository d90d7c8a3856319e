#include "catiso/bits.hpp"

#include "catiso/errors.hpp"

namespace catiso {

unsigned ceil_log2(std::uint64_t n) {
  unsigned bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < n) ++bits;
  return bits;
}

Bits bits_from_uint(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0) {
    throw PreconditionError("value " + std::to_string(value) + " does not fit in " +
                            std::to_string(width) + " bits");
  }
  Bits out(width, false);
  for (std::size_t i = 0; i < width && i < 64; ++i) {
    out[width - 1 - i] = ((value >> i) & 1U) != 0;
  }
  return out;
}

std::uint64_t bits_to_uint(const Bits& bits, std::size_t first, std::size_t len) {
  if (first + len > bits.size()) throw PreconditionError("bit range out of bounds");
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (i >= 64 && bits[first + i - 64]) throw LimitError("bit string wider than 64 bits");
    value = (value << 1) | (bits[first + i] ? 1U : 0U);
  }
  return value;
}

Bits parse_bits(std::string_view text) {
  Bits out;
  out.reserve(text.size());
  for (char ch : text) {
    if (ch == '0' || ch == '1') {
      out.push_back(ch == '1');
    } else if (ch != ' ' && ch != '_' && ch != '\n' && ch != '\t') {
      throw FormatError(std::string("invalid bit character '") + ch + "'");
    }
  }
  return out;
}

std::string format_bits(const Bits& bits) {
  std::string out;
  out.reserve(bits.size());
  for (bool b : bits) out.push_back(b ? '1' : '0');
  return out;
}

}  // namespace catiso
