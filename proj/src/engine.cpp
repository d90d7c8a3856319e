#include "catiso/engine.hpp"

#include <algorithm>
#include <string>

#include "catiso/errors.hpp"

namespace catiso {
namespace {

constexpr std::uint64_t kChunk = 256;

}  // namespace

EngineLayout make_engine_layout(const HashFamilyParams& family, unsigned unit_bits, std::size_t hashes_needed,
                                std::uint64_t enum_cap) {
  if (unit_bits < 1) throw ConfigError("unit bits must be positive");
  if (hashes_needed < 1) throw ConfigError("engine needs at least one hash function");
  EngineLayout layout;
  layout.family = family;
  layout.unit_bits = unit_bits;
  layout.c = std::max(2U, (family.seed_bits + unit_bits - 1) / unit_bits);
  layout.hashes_needed = hashes_needed;
  layout.blocks = (layout.c + 1) * hashes_needed;
  layout.enum_cap = enum_cap;
  return layout;
}

CompressOrComputeEngine::CompressOrComputeEngine(EngineLayout layout, GoodnessTest test)
    : layout_(std::move(layout)), test_(std::move(test)) {
  if (layout_.block_bits() < layout_.family.seed_bits) throw ConfigError("block too small for a seed");
}

CatalyticTape CompressOrComputeEngine::make_tape(const TapeFill& fill) const {
  return CatalyticTape(layout_.tape_bits(), layout_.block_bits(), fill);
}

HashSeed CompressOrComputeEngine::decode_block(const Bits& block) const {
  const std::size_t pad = block.size() - layout_.family.seed_bits;
  Bits low(block.begin() + static_cast<std::ptrdiff_t>(pad), block.end());
  return seed_from_bits(layout_.family, low);
}

bool CompressOrComputeEngine::is_good(const std::vector<HashSeed>& prefix, const HashSeed& candidate) {
  ++queries_;
  return test_(prefix, candidate);
}

void CompressOrComputeEngine::require_enumerable() const {
  if (layout_.block_bits() > 62) {
    throw LimitError("seed space of " + std::to_string(layout_.block_bits()) +
                     " bits is too large to enumerate; lower r");
  }
}

CompressOrComputeEngine::BadSeedIndex::BadSeedIndex(CompressOrComputeEngine* engine, std::vector<HashSeed> prefix)
    : engine_(engine), prefix_(std::move(prefix)) {}

void CompressOrComputeEngine::BadSeedIndex::extend_to(std::uint64_t chunks) {
  const std::uint64_t space = engine_->seed_space();
  const std::uint64_t max_chunks = (space + kChunk - 1) / kChunk;
  chunks = std::min(chunks, max_chunks);
  if (chunks <= chunk_count()) return;
  if (std::min(chunks * kChunk, space) > engine_->layout_.enum_cap) {
    throw LimitError("bad-seed enumeration would exceed the cap of " + std::to_string(engine_->layout_.enum_cap) +
                     " seeds; lower r or raise the cap");
  }
  while (chunk_count() < chunks) {
    const std::uint64_t first = chunk_count() * kChunk;
    const std::uint64_t last = std::min(first + kChunk, space);
    std::uint64_t count = prefix_counts_.back();
    for (std::uint64_t low = first; low < last; ++low) {
      bool bad = !engine_->is_good(prefix_, seed_from_raw(engine_->layout_.family, low));
      bad_.push_back(bad);
      if (bad) ++count;
    }
    prefix_counts_.push_back(count);
  }
}

bool CompressOrComputeEngine::BadSeedIndex::is_bad(std::uint64_t low) {
  extend_to(low / kChunk + 1);
  return bad_[low];
}

std::uint64_t CompressOrComputeEngine::BadSeedIndex::bad_below(std::uint64_t low) {
  const std::uint64_t chunk = low / kChunk;
  extend_to(chunk + 1);
  std::uint64_t count = prefix_counts_[chunk];
  for (std::uint64_t x = chunk * kChunk; x < low; ++x) count += bad_[x] ? 1 : 0;
  return count;
}

std::uint64_t CompressOrComputeEngine::BadSeedIndex::total_bad() {
  extend_to(UINT64_MAX / kChunk);
  return prefix_counts_.back();
}

std::optional<std::uint64_t> CompressOrComputeEngine::BadSeedIndex::select(std::uint64_t rank) {
  const std::uint64_t space = engine_->seed_space();
  std::uint64_t chunk = 0;
  while (true) {
    if (chunk >= chunk_count()) {
      if (chunk * kChunk >= space) return std::nullopt;
      extend_to(chunk + 1);
    }
    if (prefix_counts_[chunk + 1] > rank) break;
    ++chunk;
  }
  std::uint64_t count = prefix_counts_[chunk];
  for (std::uint64_t x = chunk * kChunk;; ++x) {
    if (bad_[x]) {
      if (count == rank) return x;
      ++count;
    }
  }
}

std::optional<std::uint64_t> CompressOrComputeEngine::BadSeedIndex::first_good() {
  const std::uint64_t space = engine_->seed_space();
  for (std::uint64_t x = 0; x < space; ++x) {
    if (!is_bad(x)) return x;
  }
  return std::nullopt;
}

CompressOrComputeEngine::BadSeedIndex& CompressOrComputeEngine::index_for(const std::vector<HashSeed>& prefix) {
  auto it = indices_.find(prefix);
  if (it == indices_.end()) it = indices_.emplace(prefix, BadSeedIndex(this, prefix)).first;
  return it->second;
}

std::uint64_t CompressOrComputeEngine::rank_of(const std::vector<HashSeed>& prefix, std::uint64_t raw) {
  require_enumerable();
  const std::uint64_t space = seed_space();
  const std::uint64_t high = raw / space;
  const std::uint64_t low = raw % space;
  auto& index = index_for(prefix);
  if (!index.is_bad(low)) throw CorruptionError("rank requested for a good seed");
  std::uint64_t rank = index.bad_below(low);
  if (high > 0) rank += high * index.total_bad();
  return rank;
}

std::uint64_t CompressOrComputeEngine::unrank(const std::vector<HashSeed>& prefix, std::uint64_t rank) {
  require_enumerable();
  auto& index = index_for(prefix);
  if (auto low = index.select(rank)) return *low;
  const std::uint64_t total = index.total_bad();
  if (total == 0) throw CorruptionError("no bad seeds in this context; cannot decompress");
  const std::uint64_t high = rank / total;
  const std::uint64_t pad_values = std::uint64_t{1} << (layout_.block_bits() - layout_.family.seed_bits);
  if (high >= pad_values) {
    throw CorruptionError("bad-seed enumeration exhausted before rank " + std::to_string(rank));
  }
  auto low = index.select(rank % total);
  if (!low) throw CorruptionError("bad-seed enumeration inconsistent");
  return high * seed_space() + *low;
}

std::uint64_t CompressOrComputeEngine::compress(CatalyticTape& tape, std::size_t k,
                                                const std::vector<HashSeed>& prefix, SpaceLedger& ledger) {
  require_enumerable();
  const Bits block = tape.read_block(k);
  const std::uint64_t raw = bits_to_uint(block);
  if (index_for(prefix).is_bad(raw % seed_space()) == false) {
    throw CorruptionError("compress called on a good block " + std::to_string(k));
  }
  const std::uint64_t rank = rank_of(prefix, raw);
  const std::size_t width = layout_.compressed_bits();
  if (width < 64 && rank >= (std::uint64_t{1} << width)) {
    throw ConfigError("bad-seed rank " + std::to_string(rank) + " does not fit in " + std::to_string(width) +
                      " bits; r is too small for this instance");
  }
  tape.write_block(k, bits_from_uint(rank, width), ledger);
  return rank;
}

void CompressOrComputeEngine::decompress(CatalyticTape& tape, std::size_t k, const std::vector<HashSeed>& prefix,
                                         SpaceLedger& ledger) {
  const std::uint64_t rank = bits_to_uint(tape.read_payload(k, layout_.compressed_bits()));
  const std::uint64_t raw = unrank(prefix, rank);
  tape.write_block(k, bits_from_uint(raw, layout_.block_bits()), ledger);
}

std::vector<HashSeed> CompressOrComputeEngine::fallback_enumerate(std::size_t freed_bits) {
  const std::size_t needed = layout_.hashes_needed * layout_.block_bits();
  if (freed_bits < needed) {
    throw PreconditionError("fallback needs " + std::to_string(needed) + " freed bits, have " +
                            std::to_string(freed_bits));
  }
  require_enumerable();
  std::vector<HashSeed> hashes;
  while (hashes.size() < layout_.hashes_needed) {
    auto low = index_for(hashes).first_good();
    if (!low) {
      throw ConfigError("no good hash function exists at step " + std::to_string(hashes.size() + 1) +
                        "; r is too small for this instance");
    }
    hashes.push_back(seed_from_raw(layout_.family, *low));
  }
  return hashes;
}

std::vector<std::uint64_t> CompressOrComputeEngine::first_bad_raws(const std::vector<HashSeed>& prefix,
                                                                   std::size_t count) {
  require_enumerable();
  std::vector<std::uint64_t> out;
  auto& index = index_for(prefix);
  for (std::uint64_t rank = 0; rank < count; ++rank) {
    auto low = index.select(rank);
    if (!low) break;
    out.push_back(*low);
  }
  return out;
}

std::vector<HashSeed> CompressOrComputeEngine::good_prefix(const CatalyticTape& tape, const std::vector<int>& flags,
                                                           std::size_t k) const {
  std::vector<HashSeed> prefix;
  for (std::size_t j = 0; j < k; ++j) {
    if (flags[j] == 1) prefix.push_back(decode_block(tape.read_block(j)));
  }
  return prefix;
}

EngineReport CompressOrComputeEngine::run(CatalyticTape& tape,
                                          const std::function<void(const std::vector<HashSeed>&)>& solve) {
  if (tape.block_len() != layout_.block_bits() || tape.block_count() != layout_.blocks) {
    throw PreconditionError("tape geometry does not match the engine layout");
  }
  const std::uint64_t queries_before = queries_;
  EngineReport report;
  report.flags.assign(layout_.blocks, -1);
  SpaceLedger ledger;

  auto restore = [&] {
    for (std::size_t k = layout_.blocks; k-- > 0;) {
      if (report.flags[k] == 0 && ledger.entries().count(k) != 0) {
        decompress(tape, k, good_prefix(tape, report.flags, k), ledger);
      }
    }
  };

  try {
    std::vector<HashSeed> good;
    for (std::size_t k = 0; k < layout_.blocks; ++k) {
      if (good.size() >= layout_.hashes_needed) break;
      report.flags[k] = 1;
      HashSeed candidate = decode_block(tape.read_block(k));
      if (is_good(good, candidate)) {
        good.push_back(candidate);
      } else {
        report.flags[k] = 0;
        compress(tape, k, good, ledger);
        report.compressed_blocks.push_back(k);
      }
    }
    if (good.size() >= layout_.hashes_needed) {
      report.path = EnginePath::A;
      report.hashes = good;
    } else {
      report.path = EnginePath::B;
      report.hashes = fallback_enumerate(ledger.freed_total());
    }
    solve(report.hashes);
    report.freed_bits = ledger.peak_freed();
    restore();
  } catch (...) {
    try {
      restore();
    } catch (...) {
    }
    throw;
  }
  report.goodness_queries = queries_ - queries_before;
  report.tape_restored = tape.verify_restored();
  if (ledger.freed_total() != 0) throw CorruptionError("ledger not empty after restoration");
  return report;
}

TapeFill adversarial_fill(CompressOrComputeEngine& engine) {
  const EngineLayout& layout = engine.layout();
  std::vector<HashSeed> prefix;
  bool any_bad = false;
  Bits bits;
  bits.reserve(layout.tape_bits());
  for (std::size_t k = 0; k < layout.blocks; ++k) {
    std::uint64_t raw = 0;
    if (prefix.size() < layout.hashes_needed) {
      const auto bad = engine.first_bad_raws(prefix, 1);
      if (bad.empty()) {
        prefix.push_back(engine.decode_block(bits_from_uint(0, layout.block_bits())));
      } else {
        raw = bad.front();
        any_bad = true;
      }
    }
    Bits block = bits_from_uint(raw, layout.block_bits());
    bits.insert(bits.end(), block.begin(), block.end());
  }
  if (!any_bad) throw PreconditionError("every seed is good in every context; no adversarial fill exists");
  return TapeFill::explicit_bits(std::move(bits));
}

}  // namespace catiso
