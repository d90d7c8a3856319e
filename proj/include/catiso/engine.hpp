#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "catiso/hashing.hpp"
#include "catiso/tape.hpp"

namespace catiso {

// Tape geometry for the compress-or-compute engine. A block holds one hash
// seed in c*L bits (seed in the low bits, zero-weight padding on top); a
// compressed block holds a bad-seed rank in (c-1)*L bits.
struct EngineLayout {
  HashFamilyParams family;
  unsigned unit_bits = 1;         // L = ceil(log2 n)
  unsigned c = 2;
  std::size_t hashes_needed = 0;  // ell / Delta, rounded up
  std::size_t blocks = 0;         // t = (c+1) * hashes_needed
  std::uint64_t enum_cap = std::uint64_t{1} << 22;

  std::size_t block_bits() const { return static_cast<std::size_t>(c) * unit_bits; }
  std::size_t compressed_bits() const { return static_cast<std::size_t>(c - 1) * unit_bits; }
  std::size_t tape_bits() const { return blocks * block_bits(); }
};

EngineLayout make_engine_layout(const HashFamilyParams& family, unsigned unit_bits, std::size_t hashes_needed,
                                std::uint64_t enum_cap);

// goodness(prefix, candidate): does candidate extend the good prefix h_1..h_{i-1}?
using GoodnessTest = std::function<bool(const std::vector<HashSeed>&, const HashSeed&)>;

enum class EnginePath { A, B };

struct EngineReport {
  EnginePath path = EnginePath::A;
  std::vector<int> flags;  // b_k in {-1, 0, 1}
  std::vector<HashSeed> hashes;
  std::vector<std::size_t> compressed_blocks;
  std::size_t freed_bits = 0;  // peak ledger saving
  std::uint64_t goodness_queries = 0;
  bool tape_restored = false;
};

class CompressOrComputeEngine {
 public:
  CompressOrComputeEngine(EngineLayout layout, GoodnessTest test);

  const EngineLayout& layout() const { return layout_; }
  CatalyticTape make_tape(const TapeFill& fill) const;

  // Finds hashes_needed good hashes (from the tape, or by enumeration over
  // freed space), hands them to `solve`, then restores the tape.
  EngineReport run(CatalyticTape& tape, const std::function<void(const std::vector<HashSeed>&)>& solve);

  HashSeed decode_block(const Bits& block) const;
  bool is_good(const std::vector<HashSeed>& prefix, const HashSeed& candidate);

  // Rank of a raw block value among bad raws for this prefix, ascending.
  std::uint64_t rank_of(const std::vector<HashSeed>& prefix, std::uint64_t raw);
  std::uint64_t unrank(const std::vector<HashSeed>& prefix, std::uint64_t rank);

  std::uint64_t compress(CatalyticTape& tape, std::size_t k, const std::vector<HashSeed>& prefix,
                         SpaceLedger& ledger);
  void decompress(CatalyticTape& tape, std::size_t k, const std::vector<HashSeed>& prefix, SpaceLedger& ledger);

  // Lexicographically first good seed at each step.
  std::vector<HashSeed> fallback_enumerate(std::size_t freed_bits);

  // The smallest `count` bad raw values for this prefix, ascending.
  std::vector<std::uint64_t> first_bad_raws(const std::vector<HashSeed>& prefix, std::size_t count);

  std::uint64_t goodness_queries() const { return queries_; }

 private:
  // Lazily evaluated goodness bitmap over the seed space [0, 2^seed_bits).
  class BadSeedIndex {
   public:
    BadSeedIndex(CompressOrComputeEngine* engine, std::vector<HashSeed> prefix);
    std::uint64_t bad_below(std::uint64_t low);
    std::optional<std::uint64_t> select(std::uint64_t rank);
    std::optional<std::uint64_t> first_good();
    std::uint64_t total_bad();
    bool is_bad(std::uint64_t low);

   private:
    void extend_to(std::uint64_t chunks);
    std::uint64_t chunk_count() const { return prefix_counts_.size() - 1; }

    CompressOrComputeEngine* engine_;
    std::vector<HashSeed> prefix_;
    std::vector<bool> bad_;
    std::vector<std::uint64_t> prefix_counts_{0};
  };

  BadSeedIndex& index_for(const std::vector<HashSeed>& prefix);
  std::vector<HashSeed> good_prefix(const CatalyticTape& tape, const std::vector<int>& flags, std::size_t k) const;
  std::uint64_t seed_space() const { return std::uint64_t{1} << layout_.family.seed_bits; }
  void require_enumerable() const;

  EngineLayout layout_;
  GoodnessTest test_;
  std::map<std::vector<HashSeed>, BadSeedIndex> indices_;
  std::uint64_t queries_ = 0;
};

// Each block decodes to the smallest bad seed of the context it will be read
// in; when a context has no bad seed, the block holds seed 0 and the context
// grows by it. Forces path B whenever some context on that chain has a bad seed.
TapeFill adversarial_fill(CompressOrComputeEngine& engine);

}  // namespace catiso
