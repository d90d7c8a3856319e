#include "catiso/fsat.hpp"

#include <algorithm>
#include <cstdlib>

#include "catiso/errors.hpp"

namespace catiso {
namespace {

std::int64_t total(const Weights& w) {
  std::int64_t sum = 0;
  for (auto x : w) sum += x;
  return sum;
}

// Least target with a true answer among queries [first, first+count).
std::optional<std::int64_t> least_true(const QueryRound& round, const std::vector<bool>& answers, std::size_t first,
                                       std::size_t count) {
  for (std::size_t q = first; q < first + count; ++q) {
    if (answers[q]) return round.queries[q].target;
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(FsatQueryKind kind) {
  switch (kind) {
    case FsatQueryKind::Any:
      return "q1";
    case FsatQueryKind::FixOne:
      return "q2";
    case FsatQueryKind::FixZero:
      return "q3";
    case FsatQueryKind::RebuildOne:
      return "q4";
    case FsatQueryKind::RebuildZero:
      return "q5";
  }
  return "?";
}

const BruteForceFsatOracle::Reachable& BruteForceFsatOracle::reachable(const Cnf& phi, const Weights& w) {
  auto it = cache_.find(w);
  if (it != cache_.end()) return it->second;
  const std::size_t size = static_cast<std::size_t>(total(w)) + 1;
  Reachable r;
  r.any.assign(size, false);
  r.one.assign(phi.vars, std::vector<bool>(size, false));
  r.zero.assign(phi.vars, std::vector<bool>(size, false));
  for (Mask y : models_) {
    const auto weight = static_cast<std::size_t>(weight_of(y, w));
    r.any[weight] = true;
    for (unsigned j = 0; j < phi.vars; ++j) {
      if ((y >> j) & 1U) {
        r.one[j][weight] = true;
      } else {
        r.zero[j][weight] = true;
      }
    }
  }
  return cache_.emplace(w, std::move(r)).first->second;
}

std::vector<bool> BruteForceFsatOracle::answer_round(const Cnf& phi, const QueryRound& round) {
  if (!cached_phi_ || cached_phi_->vars != phi.vars || cached_phi_->clauses != phi.clauses) {
    cached_phi_ = phi;
    models_ = all_models(phi);
    cache_.clear();
  }
  std::vector<bool> answers;
  answers.reserve(round.queries.size());
  for (const auto& q : round.queries) {
    const Reachable& r = reachable(phi, round.weights.at(q.block));
    if (q.target < 0 || static_cast<std::size_t>(q.target) >= r.any.size()) {
      answers.push_back(false);
      continue;
    }
    const auto t = static_cast<std::size_t>(q.target);
    switch (q.kind) {
      case FsatQueryKind::Any:
        answers.push_back(r.any[t]);
        break;
      case FsatQueryKind::FixOne:
      case FsatQueryKind::RebuildOne:
        answers.push_back(r.one.at(q.var - 1)[t]);
        break;
      case FsatQueryKind::FixZero:
      case FsatQueryKind::RebuildZero:
        answers.push_back(r.zero.at(q.var - 1)[t]);
        break;
    }
  }
  return answers;
}

ReplayFsatOracle::ReplayFsatOracle(QueryRound recorded_round1, std::vector<bool> recorded_answers, FsatOracle& live)
    : recorded_(std::move(recorded_round1)), answers_(std::move(recorded_answers)), live_(live) {}

std::vector<bool> ReplayFsatOracle::answer_round(const Cnf& phi, const QueryRound& round) {
  if (round.round != 1) return live_.answer_round(phi, round);
  if (round.queries != recorded_.queries || round.weights != recorded_.weights) {
    throw CorruptionError("replayed round 1 differs from the recording");
  }
  return answers_;
}

bool IsolatedFormula::satisfied(Mask assignment) const {
  if (contradiction || !base.satisfied(assignment)) return false;
  if (weight_equality && weight_of(assignment, weight_equality->first) != weight_equality->second) return false;
  for (int lit : units) {
    const bool value = ((assignment >> (std::abs(lit) - 1)) & 1U) != 0;
    if ((lit > 0) != value) return false;
  }
  return true;
}

std::uint64_t IsolatedFormula::model_count() const {
  if (base.vars > 24) throw LimitError("model counting limited to 24 variables");
  std::uint64_t count = 0;
  for (Mask y = 0; y < (Mask{1} << base.vars); ++y) count += satisfied(y) ? 1 : 0;
  return count;
}

std::vector<FsatLogEntry> FsatResult::log() const {
  std::vector<FsatLogEntry> out;
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    for (std::size_t q = 0; q < rounds[r].queries.size(); ++q) {
      out.push_back({rounds[r].round, rounds[r].queries[q], answers[r][q]});
    }
  }
  return out;
}

FsatResult run_fsat(const Cnf& phi, CatalyticTape& tape, const WeightTapeLayout& layout, FsatOracle& oracle) {
  if (layout.m != phi.vars) throw PreconditionError("weight layout must have one entry per variable");
  if (tape.block_len() != layout.block_bits() || tape.block_count() != layout.n_weights) {
    throw PreconditionError("tape geometry does not match the weight layout");
  }
  const unsigned n = phi.vars;
  FsatResult result;
  result.isolated.base = phi;
  SpaceLedger ledger;

  // Round 1: for every tape assignment W_i, all targets and variables.
  QueryRound r1;
  r1.round = 1;
  struct Span {
    std::size_t any_first = 0;
    std::size_t targets = 0;
    std::size_t fix_first = 0;  // per (j, target): FixOne then FixZero
  };
  std::vector<Span> spans;
  for (std::size_t i = 0; i < layout.n_weights; ++i) {
    const Weights w = decode_weights(layout, tape.read_block(i));
    r1.weights.push_back(w);
    Span span;
    span.targets = static_cast<std::size_t>(total(w)) + 1;
    span.any_first = r1.queries.size();
    for (std::size_t t = 0; t < span.targets; ++t) {
      r1.queries.push_back({FsatQueryKind::Any, static_cast<std::uint32_t>(i), 0, static_cast<std::int64_t>(t)});
    }
    span.fix_first = r1.queries.size();
    for (unsigned j = 1; j <= n; ++j) {
      for (std::size_t t = 0; t < span.targets; ++t) {
        r1.queries.push_back({FsatQueryKind::FixOne, static_cast<std::uint32_t>(i), j, static_cast<std::int64_t>(t)});
        r1.queries.push_back({FsatQueryKind::FixZero, static_cast<std::uint32_t>(i), j, static_cast<std::int64_t>(t)});
      }
    }
    spans.push_back(span);
  }
  std::vector<bool> a1 = oracle.answer_round(phi, r1);
  if (a1.size() != r1.queries.size()) throw CorruptionError("oracle answered the wrong number of queries");

  auto fix_answer = [&](std::size_t i, unsigned j, std::int64_t t, bool one) {
    const Span& span = spans[i];
    return a1[span.fix_first + 2 * ((j - 1) * span.targets + static_cast<std::size_t>(t)) + (one ? 0 : 1)];
  };

  QueryRound r2;
  r2.round = 2;
  std::vector<std::pair<std::size_t, unsigned>> thresholds;  // (block, variable)

  const auto wmin0 = least_true(r1, a1, spans[0].any_first, spans[0].targets);
  if (!wmin0) {
    result.path = S2dPath::Reject;
    result.isolated.contradiction = true;
  } else {
    std::vector<std::optional<unsigned>> first_threshold(layout.n_weights);
    for (std::size_t i = 0; i < layout.n_weights && !result.assignment; ++i) {
      const auto wmin = least_true(r1, a1, spans[i].any_first, spans[i].targets);
      if (!wmin) throw CorruptionError("round-1 answers disagree on satisfiability");
      bool isolating = true;
      Mask y = 0;
      for (unsigned j = 1; j <= n; ++j) {
        const bool one = fix_answer(i, j, *wmin, true);
        const bool zero = fix_answer(i, j, *wmin, false);
        if (one && zero) {
          isolating = false;
          if (!first_threshold[i]) first_threshold[i] = j;
        }
        if (one) y |= Mask{1} << (j - 1);
      }
      if (isolating) {
        result.path = S2dPath::Isolated;
        result.isolating_block = i;
        result.assignment = y;
        result.isolated.weight_equality = std::make_pair(r1.weights[i], *wmin);
      }
    }
    if (!result.assignment) {
      // No isolating assignment on the tape: compress every block, then search exhaustively.
      for (std::size_t i = 0; i < layout.n_weights; ++i) {
        const unsigned j = *first_threshold[i];
        tape.write_block(i, encode_compressed(layout, compress_weight(r1.weights[i], j - 1)), ledger);
        result.compressed.push_back(i);
        thresholds.emplace_back(i, j);
      }
      result.path = S2dPath::Fallback;
      auto models = all_models(phi);
      result.assignment = models.front();
      for (unsigned j = 1; j <= n; ++j) {
        const bool value = ((models.front() >> (j - 1)) & 1U) != 0;
        result.isolated.units.push_back(value ? static_cast<int>(j) : -static_cast<int>(j));
      }
    }
  }
  result.freed_bits = ledger.peak_freed();

  // Round 2: rebuild each compressed block from its stored remainder.
  std::vector<std::pair<std::size_t, std::size_t>> r2_spans;  // first query, targets
  for (auto [i, j] : thresholds) {
    CompressedWeight cw = decode_compressed(layout, tape.read_payload(i, layout.compressed_bits()));
    if (cw.i0 != j - 1) throw CorruptionError("compressed block lost its threshold index");
    Weights w(n, 0);
    for (std::size_t e = 0, k = 0; e < n; ++e) {
      if (e != cw.i0) w[e] = cw.remaining[k++];
    }
    const auto slot = static_cast<std::uint32_t>(r2.weights.size());
    r2.weights.push_back(w);
    const std::size_t targets = static_cast<std::size_t>(total(w)) + 1;
    r2_spans.emplace_back(r2.queries.size(), targets);
    for (std::size_t t = 0; t < targets; ++t) {
      r2.queries.push_back({FsatQueryKind::RebuildOne, slot, j, static_cast<std::int64_t>(t)});
      r2.queries.push_back({FsatQueryKind::RebuildZero, slot, j, static_cast<std::int64_t>(t)});
    }
  }
  std::vector<bool> a2 = oracle.answer_round(phi, r2);
  if (a2.size() != r2.queries.size()) throw CorruptionError("oracle answered the wrong number of queries");

  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    auto [i, j] = thresholds[k];
    auto [first, targets] = r2_spans[k];
    std::optional<std::int64_t> w_one;
    std::optional<std::int64_t> w_zero;
    for (std::size_t t = 0; t < targets; ++t) {
      if (!w_one && a2[first + 2 * t]) w_one = static_cast<std::int64_t>(t);
      if (!w_zero && a2[first + 2 * t + 1]) w_zero = static_cast<std::int64_t>(t);
    }
    if (!w_one || !w_zero) throw CorruptionError("round-2 answers cannot rebuild block " + std::to_string(i));
    Weights w = r2.weights[k];
    w[j - 1] = *w_zero - *w_one;
    tape.write_block(i, encode_weights(layout, w), ledger);
  }
  if (ledger.freed_total() != 0) throw CorruptionError("ledger not empty after restoration");

  result.rounds = {std::move(r1), std::move(r2)};
  result.answers = {std::move(a1), std::move(a2)};
  result.tape_restored = tape.verify_restored();
  return result;
}

std::optional<Mask> fsat(const Cnf& phi, CatalyticTape& tape, const WeightTapeLayout& layout, FsatOracle& oracle) {
  return run_fsat(phi, tape, layout, oracle).assignment;
}

IsolatedFormula isolate_formula(const Cnf& phi, CatalyticTape& tape, const WeightTapeLayout& layout,
                                FsatOracle& oracle) {
  return run_fsat(phi, tape, layout, oracle).isolated;
}

}  // namespace catiso
