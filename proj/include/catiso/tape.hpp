#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>

#include "catiso/bits.hpp"

namespace catiso {

using Digest = std::array<std::uint8_t, 32>;

// SHA-256 over the packed bit string (length-prefixed).
Digest digest_bits(const Bits& bits);

struct TapeFill {
  enum class Kind { Zeros, Random, Explicit };

  Kind kind = Kind::Zeros;
  std::uint64_t seed = 0;
  Bits bits;

  static TapeFill zeros() { return {}; }
  static TapeFill random(std::uint64_t seed) { return {Kind::Random, seed, {}}; }
  static TapeFill explicit_bits(Bits bits) { return {Kind::Explicit, 0, std::move(bits)}; }
};

// Hex text ("0x" prefix and whitespace allowed) or raw binary bytes.
Bits load_fill_file(const std::filesystem::path& path);

// Records which blocks currently hold a shortened payload. Saving is counted
// information-theoretically (bits_before - bits_after); physical padding is
// not consolidated.
class SpaceLedger {
 public:
  struct Entry {
    std::size_t block = 0;
    std::size_t bits_before = 0;
    std::size_t bits_after = 0;
  };

  void record(std::size_t block, std::size_t bits_before, std::size_t bits_after);
  void release(std::size_t block);

  std::size_t freed_total() const { return freed_; }
  std::size_t peak_freed() const { return peak_; }
  const std::map<std::size_t, Entry>& entries() const { return entries_; }

 private:
  std::map<std::size_t, Entry> entries_;
  std::size_t freed_ = 0;
  std::size_t peak_ = 0;
};

// Fixed-length catalytic storage split into equal blocks. The digest of the
// initial contents is taken at construction; verify_restored() compares the
// current contents against it.
class CatalyticTape {
 public:
  CatalyticTape(std::size_t total_bits, std::size_t block_len, const TapeFill& fill);

  std::size_t size() const { return bits_.size(); }
  std::size_t block_len() const { return block_len_; }
  std::size_t block_count() const { return block_len_ == 0 ? 0 : bits_.size() / block_len_; }

  Bits read_block(std::size_t k) const;
  // First `len` bits of block k: the payload of a shortened block.
  Bits read_payload(std::size_t k, std::size_t len) const;

  // Writes `payload` left-aligned into block k and zero-fills the rest. A
  // full-length write clears the block's ledger entry; a shorter one records
  // the saving.
  void write_block(std::size_t k, const Bits& payload, SpaceLedger& ledger);

  bool verify_restored() const;
  const Digest& origin() const { return origin_; }
  const Bits& bits() const { return bits_; }

  // Direct bit access, for fault injection in tests.
  void set_bit(std::size_t index, bool value);

 private:
  void check_block(std::size_t k) const;

  Bits bits_;
  std::size_t block_len_;
  Digest origin_{};
};

}  // namespace catiso
