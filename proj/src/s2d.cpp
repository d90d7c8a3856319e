#include "catiso/s2d.hpp"

#include <algorithm>
#include <string>

#include "catiso/errors.hpp"

namespace catiso {
namespace {

std::int64_t cube(std::int64_t m) { return m * m * m; }

Weights offset_for(const S2dOptions& options, unsigned m) {
  if (!options.input_weights) return Weights(m, 0);
  if (options.input_weights->size() != m) throw PreconditionError("input weights must have m entries");
  return combined_weight(*options.input_weights, Weights(m, 0), m);
}

Weights add(const Weights& a, const Weights& b) {
  Weights out(a.size());
  for (std::size_t e = 0; e < a.size(); ++e) out[e] = a[e] + b[e];
  return out;
}

}  // namespace

WeightTapeLayout weight_tape_layout(unsigned m, std::size_t n_weights) {
  if (m < 1) throw ConfigError("witness length m must be positive");
  if (m > 24) throw LimitError("witness length above 24 is beyond desk scale");
  if (n_weights < 1) throw ConfigError("at least one tape weight assignment is required");
  WeightTapeLayout layout;
  layout.m = m;
  layout.unit_bits = std::max(1U, ceil_log2(m));
  layout.n_weights = n_weights;
  return layout;
}

std::size_t default_weight_count(unsigned m) { return static_cast<std::size_t>(m) + 8; }

CatalyticTape make_weight_tape(const WeightTapeLayout& layout, const TapeFill& fill) {
  return CatalyticTape(layout.n_weights * layout.block_bits(), layout.block_bits(), fill);
}

Weights decode_weights(const WeightTapeLayout& layout, const Bits& block) {
  if (block.size() != layout.block_bits()) throw PreconditionError("weight block has the wrong length");
  Weights w(layout.m);
  for (unsigned e = 0; e < layout.m; ++e) {
    w[e] = static_cast<std::int64_t>(bits_to_uint(block, e * layout.entry_bits(), layout.entry_bits())) + 1;
  }
  return w;
}

Bits encode_weights(const WeightTapeLayout& layout, const Weights& w) {
  if (w.size() != layout.m) throw PreconditionError("weight assignment must have m entries");
  Bits out;
  out.reserve(layout.block_bits());
  for (auto x : w) {
    if (x < 1 || x > layout.max_entry()) throw PreconditionError("tape weight entry out of range");
    Bits entry = bits_from_uint(static_cast<std::uint64_t>(x - 1), layout.entry_bits());
    out.insert(out.end(), entry.begin(), entry.end());
  }
  return out;
}

std::int64_t search_cap(const Weights& w) {
  std::int64_t total = 0;
  for (auto x : w) total += x;
  return std::max(cube(static_cast<std::int64_t>(w.size())), total);
}

std::optional<std::int64_t> find_wmin(WeightedDecisionOracle& oracle, const Weights& w) {
  std::int64_t hi = search_cap(w);
  if (!oracle.query(w, hi)) return std::nullopt;
  std::int64_t lo = 0;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (oracle.query(w, mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::optional<std::size_t> find_threshold(WeightedDecisionOracle& oracle, const Weights& w, std::int64_t wmin) {
  for (std::size_t e = 0; e < w.size(); ++e) {
    Weights raised = w;
    raised[e] = wmin + 1;
    if (!oracle.query(raised, wmin)) continue;
    Weights zeroed = w;
    zeroed[e] = 0;
    if (oracle.query(zeroed, wmin - w[e])) return e;
  }
  return std::nullopt;
}

Mask extract_witness(WeightedDecisionOracle& oracle, const Relation& relation, const Weights& w, std::int64_t wmin) {
  Mask y = 0;
  for (std::size_t e = 0; e < w.size(); ++e) {
    Weights raised = w;
    raised[e] = wmin + 1;
    if (!oracle.query(raised, wmin)) y |= Mask{1} << e;
  }
  if (!relation.accepts(y) || weight_of(y, w) != wmin) {
    throw CorruptionError("extracted witness " + format_witness(y, relation.m) + " is not a min-weight witness");
  }
  return y;
}

CompressedWeight compress_weight(const Weights& w, std::size_t i0) {
  if (i0 >= w.size()) throw PreconditionError("threshold index out of range");
  CompressedWeight cw;
  cw.i0 = i0;
  for (std::size_t e = 0; e < w.size(); ++e) {
    if (e != i0) cw.remaining.push_back(w[e]);
  }
  return cw;
}

Bits encode_compressed(const WeightTapeLayout& layout, const CompressedWeight& cw) {
  if (cw.remaining.size() + 1 != layout.m) throw PreconditionError("compressed weight must have m-1 entries");
  Bits out = bits_from_uint(cw.i0, layout.unit_bits);
  for (auto x : cw.remaining) {
    if (x < 1 || x > layout.max_entry()) throw PreconditionError("tape weight entry out of range");
    Bits entry = bits_from_uint(static_cast<std::uint64_t>(x - 1), layout.entry_bits());
    out.insert(out.end(), entry.begin(), entry.end());
  }
  return out;
}

CompressedWeight decode_compressed(const WeightTapeLayout& layout, const Bits& payload) {
  if (payload.size() != layout.compressed_bits()) throw PreconditionError("compressed payload has the wrong length");
  CompressedWeight cw;
  cw.i0 = bits_to_uint(payload, 0, layout.unit_bits);
  if (cw.i0 >= layout.m) throw CorruptionError("compressed threshold index out of range");
  for (unsigned k = 0; k + 1 < layout.m; ++k) {
    cw.remaining.push_back(
        static_cast<std::int64_t>(bits_to_uint(payload, layout.unit_bits + k * layout.entry_bits(), layout.entry_bits())) +
        1);
  }
  return cw;
}

Weights recompute(WeightedDecisionOracle& oracle, const CompressedWeight& cw, const Weights& offset) {
  const std::size_t m = cw.remaining.size() + 1;
  if (offset.size() != m) throw PreconditionError("offset must have m entries");
  if (cw.i0 >= m) throw PreconditionError("threshold index out of range");
  Weights effective(m, 0);
  std::int64_t others = 0;
  for (std::size_t e = 0, k = 0; e < m; ++e) {
    if (e == cw.i0) continue;
    effective[e] = offset[e] + cw.remaining[k++];
    others += effective[e];
  }
  Weights high = effective;
  high[cw.i0] = std::max(cube(static_cast<std::int64_t>(m)), others + 1);
  Weights low = effective;
  low[cw.i0] = 0;
  auto w_high = find_wmin(oracle, high);
  auto w_low = find_wmin(oracle, low);
  if (!w_high || !w_low) throw CorruptionError("recompute: modified assignments admit no witness");
  Weights out = effective;
  out[cw.i0] = *w_high - *w_low;
  for (std::size_t e = 0; e < m; ++e) out[e] -= offset[e];
  return out;
}

Weights recompute(WeightedDecisionOracle& oracle, const CompressedWeight& cw) {
  return recompute(oracle, cw, Weights(cw.remaining.size() + 1, 0));
}

Weights combined_weight(const Weights& w_input, const Weights& w_catalytic, unsigned m) {
  if (w_input.size() != m || w_catalytic.size() != m) throw PreconditionError("combined weights need m entries");
  std::int64_t scale = 1;
  for (int i = 0; i < 10; ++i) {
    if (scale > INT64_MAX / std::max<std::int64_t>(1, m)) throw LimitError("m^10 overflows 64 bits");
    scale *= std::max<std::int64_t>(1, m);
  }
  Weights out(m);
  for (unsigned e = 0; e < m; ++e) {
    if (w_input[e] < 0 || w_catalytic[e] < 0) throw PreconditionError("weights must be nonnegative");
    if (w_input[e] > (INT64_MAX / 4 - w_catalytic[e]) / scale) throw LimitError("combined weight overflows 64 bits");
    out[e] = w_input[e] * scale + w_catalytic[e];
  }
  return out;
}

std::string to_string(S2dPath path) {
  switch (path) {
    case S2dPath::Isolated:
      return "isolated";
    case S2dPath::Fallback:
      return "fallback";
    case S2dPath::Reject:
      return "reject";
  }
  return "?";
}

S2dResult search_to_decision(const Relation& relation, WeightedDecisionOracle& oracle, CatalyticTape& tape,
                             const WeightTapeLayout& layout, const S2dOptions& options) {
  if (relation.m != layout.m || oracle.m() != layout.m) throw PreconditionError("relation, oracle and tape disagree on m");
  if (tape.block_len() != layout.block_bits() || tape.block_count() != layout.n_weights) {
    throw PreconditionError("tape geometry does not match the weight layout");
  }
  const std::uint64_t queries_before = oracle.queries();
  const Weights offset = offset_for(options, layout.m);
  auto effective = [&](std::size_t i) { return add(offset, decode_weights(layout, tape.read_block(i))); };

  S2dResult result;
  SpaceLedger ledger;
  auto restore = [&] {
    for (auto it = result.compressed.rbegin(); it != result.compressed.rend(); ++it) {
      if (ledger.entries().count(*it) == 0) continue;
      CompressedWeight cw = decode_compressed(layout, tape.read_payload(*it, layout.compressed_bits()));
      tape.write_block(*it, encode_weights(layout, recompute(oracle, cw, offset)), ledger);
    }
  };

  try {
    const Weights first = effective(0);
    if (!oracle.query(first, search_cap(first))) {
      result.path = S2dPath::Reject;
    } else {
      for (std::size_t i = 0; i < layout.n_weights; ++i) {
        const Weights w = effective(i);
        auto wmin = find_wmin(oracle, w);
        if (!wmin) throw CorruptionError("oracle lost its witness between queries");
        auto threshold = find_threshold(oracle, w, *wmin);
        if (!threshold) {
          result.path = S2dPath::Isolated;
          result.isolating_index = i;
          result.wmin = *wmin;
          result.witness = extract_witness(oracle, relation, w, *wmin);
          break;
        }
        const Weights stored = decode_weights(layout, tape.read_block(i));
        tape.write_block(i, encode_compressed(layout, compress_weight(stored, *threshold)), ledger);
        result.compressed.push_back(i);
      }
      if (!result.witness) {
        // Every assignment was compressed: exhaustive search under W_1.
        result.path = S2dPath::Fallback;
        for (Mask y : enumerate_witnesses(relation)) {
          const std::int64_t wy = weight_of(y, first);
          if (!result.witness || wy < result.wmin) {
            result.witness = y;
            result.wmin = wy;
          }
        }
        if (!result.witness) throw CorruptionError("oracle reported a witness that enumeration cannot find");
      }
    }
    result.freed_bits = ledger.peak_freed();
    restore();
  } catch (...) {
    try {
      restore();
    } catch (...) {
    }
    throw;
  }
  if (ledger.freed_total() != 0) throw CorruptionError("ledger not empty after restoration");
  result.queries_total = oracle.queries() - queries_before;
  result.tape_restored = tape.verify_restored();
  return result;
}

}  // namespace catiso
