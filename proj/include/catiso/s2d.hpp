#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catiso/oracles.hpp"
#include "catiso/tape.hpp"

namespace catiso {

// Catalytic tape of N weight assignments. Each assignment is m entries of
// 2L bits (L = ceil(log2 m)); an entry with raw value x means weight x+1.
struct WeightTapeLayout {
  unsigned m = 0;
  unsigned unit_bits = 1;
  std::size_t n_weights = 0;

  std::size_t entry_bits() const { return 2 * static_cast<std::size_t>(unit_bits); }
  std::size_t block_bits() const { return m * entry_bits(); }
  std::size_t compressed_bits() const { return block_bits() - unit_bits; }
  std::int64_t max_entry() const { return std::int64_t{1} << entry_bits(); }
};

WeightTapeLayout weight_tape_layout(unsigned m, std::size_t n_weights);
// Default N = m + 8.
std::size_t default_weight_count(unsigned m);
CatalyticTape make_weight_tape(const WeightTapeLayout& layout, const TapeFill& fill);

Weights decode_weights(const WeightTapeLayout& layout, const Bits& block);
Bits encode_weights(const WeightTapeLayout& layout, const Weights& w);

// Upper end of the w0 search range: max(m^3, sum of W).
std::int64_t search_cap(const Weights& w);

std::optional<std::int64_t> find_wmin(WeightedDecisionOracle& oracle, const Weights& w);
std::optional<std::size_t> find_threshold(WeightedDecisionOracle& oracle, const Weights& w, std::int64_t wmin);
Mask extract_witness(WeightedDecisionOracle& oracle, const Relation& relation, const Weights& w, std::int64_t wmin);

// A weight assignment with the threshold entry i0 dropped.
struct CompressedWeight {
  std::size_t i0 = 0;
  Weights remaining;  // m-1 entries, in order
};

CompressedWeight compress_weight(const Weights& w, std::size_t i0);
Bits encode_compressed(const WeightTapeLayout& layout, const CompressedWeight& cw);
CompressedWeight decode_compressed(const WeightTapeLayout& layout, const Bits& payload);

// Rebuilds the dropped entry from two oracle minima. The oracle sees
// offset + W; the returned assignment excludes the offset.
Weights recompute(WeightedDecisionOracle& oracle, const CompressedWeight& cw, const Weights& offset);
Weights recompute(WeightedDecisionOracle& oracle, const CompressedWeight& cw);

// W_input * m^10 + W_catalytic, element-wise.
Weights combined_weight(const Weights& w_input, const Weights& w_catalytic, unsigned m);

struct S2dOptions {
  std::optional<Weights> input_weights;
};

enum class S2dPath { Isolated, Fallback, Reject };
std::string to_string(S2dPath path);

struct S2dResult {
  S2dPath path = S2dPath::Reject;
  std::optional<Mask> witness;
  std::int64_t wmin = 0;  // under the effective weights used
  std::optional<std::size_t> isolating_index;
  std::vector<std::size_t> compressed;
  std::size_t freed_bits = 0;
  std::uint64_t queries_total = 0;
  bool tape_restored = false;
};

S2dResult search_to_decision(const Relation& relation, WeightedDecisionOracle& oracle, CatalyticTape& tape,
                             const WeightTapeLayout& layout, const S2dOptions& options = {});

}  // namespace catiso
