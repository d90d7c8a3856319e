#include "catiso/circuits.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "catiso/errors.hpp"

namespace catiso {
namespace {

constexpr unsigned kSaturated = 2;

template <typename T>
struct Stat {
  T weight{};
  unsigned count = 0;
};

bool literal_value(const Gate& gate, const Bits& z) {
  if (gate.literal == 0) return gate.constant;
  const std::size_t v = static_cast<std::size_t>(std::abs(gate.literal)) - 1;
  return gate.literal > 0 ? z[v] : !z[v];
}

template <typename T>
std::vector<Stat<T>> run_dp(const LayeredCircuit& c, const Bits& z, const std::vector<T>& w) {
  std::vector<Stat<T>> stats(c.size());
  for (std::size_t k = 0; k <= c.depth(); ++k) {
    for (std::size_t g : c.layer(k)) {
      const Gate& gate = c.gate(g);
      Stat<T>& out = stats[g];
      if (gate.kind == GateKind::Lit) {
        if (literal_value(gate, z)) out = {w[g], 1};
      } else if (gate.kind == GateKind::And) {
        const auto& a = stats[gate.children[0]];
        const auto& b = stats[gate.children[1]];
        if (a.count > 0 && b.count > 0) out = {w[g] + a.weight + b.weight, std::min(kSaturated, a.count * b.count)};
      } else {
        for (std::size_t child : gate.children) {
          const auto& s = stats[child];
          if (s.count == 0) continue;
          if (out.count == 0 || s.weight < out.weight) {
            out.weight = s.weight;
            out.count = s.count;
          } else if (s.weight == out.weight) {
            out.count = std::min(kSaturated, out.count + s.count);
          }
        }
        if (out.count > 0) out.weight += w[g];
      }
    }
  }
  return stats;
}

// A proof tree uses each gate at most 2^(ell+1) times, so this bounds every tree weight.
bool fits_int64(const LayeredCircuit& c, const WeightAssignment& w) {
  BigInt total = 0;
  for (const auto& x : w) {
    if (x < 0) throw PreconditionError("weights must be nonnegative");
    total += x;
  }
  return (total << (c.ell() + 1)) < (BigInt(1) << 62);
}

void check_inputs(const LayeredCircuit& c, const Bits& z, const WeightAssignment& w) {
  if (z.size() != c.variables()) {
    throw PreconditionError("assignment has " + std::to_string(z.size()) + " bits, circuit has " +
                            std::to_string(c.variables()) + " variables");
  }
  if (w.size() != c.size()) throw PreconditionError("weight assignment size does not match gate count");
}

}  // namespace

LayeredCircuit::LayeredCircuit(std::vector<Gate> gates, std::vector<std::vector<std::size_t>> layers,
                               std::size_t output)
    : gates_(std::move(gates)), layers_(std::move(layers)), output_(output) {
  if (layers_.size() < 3 || (layers_.size() - 1) % 2 != 0) {
    throw FormatError("circuit depth must be even and at least 2");
  }
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  layer_of_.assign(gates_.size(), kUnset);
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    for (std::size_t g : layers_[k]) {
      if (g >= gates_.size()) throw FormatError("gate id " + std::to_string(g) + " out of range");
      if (layer_of_[g] != kUnset) throw FormatError("gate " + std::to_string(g) + " listed twice");
      layer_of_[g] = k;
    }
  }
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    if (layer_of_[g] == kUnset) throw FormatError("gate " + std::to_string(g) + " is in no layer");
    const Gate& gate = gates_[g];
    const std::size_t k = layer_of_[g];
    const std::string where = "gate " + std::to_string(g) + " in layer " + std::to_string(k);
    if (k == 0) {
      if (gate.kind != GateKind::Lit) throw FormatError(where + " must be a literal");
      variables_ = std::max(variables_, static_cast<std::size_t>(std::abs(gate.literal)));
      continue;
    }
    const GateKind expected = k % 2 == 1 ? GateKind::And : GateKind::Or;
    if (gate.kind != expected) throw FormatError(where + (k % 2 == 1 ? " must be an AND gate" : " must be an OR gate"));
    if (gate.kind == GateKind::And && (gate.children.size() != 2 || gate.children[0] == gate.children[1])) {
      throw FormatError(where + " needs exactly two distinct children");
    }
    if (gate.kind == GateKind::Or) {
      if (gate.children.empty()) throw FormatError(where + " needs a child");
      auto sorted = gate.children;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw FormatError(where + " lists a child twice");
      }
    }
    for (std::size_t child : gate.children) {
      if (child >= gates_.size() || layer_of_[child] + 1 != k) {
        throw FormatError(where + " has a child outside the previous layer");
      }
    }
  }
  if (output_ >= gates_.size() || layer_of_[output_] != depth()) {
    throw FormatError("output gate must lie in the top layer");
  }
}

std::vector<bool> eval_circuit(const LayeredCircuit& c, const Bits& z) {
  if (z.size() != c.variables()) throw PreconditionError("assignment length does not match variable count");
  std::vector<bool> value(c.size(), false);
  for (std::size_t k = 0; k <= c.depth(); ++k) {
    for (std::size_t g : c.layer(k)) {
      const Gate& gate = c.gate(g);
      if (gate.kind == GateKind::Lit) {
        value[g] = literal_value(gate, z);
      } else if (gate.kind == GateKind::And) {
        value[g] = value[gate.children[0]] && value[gate.children[1]];
      } else {
        value[g] = std::any_of(gate.children.begin(), gate.children.end(), [&](std::size_t ch) { return value[ch]; });
      }
    }
  }
  return value;
}

std::vector<ProofTreeStats> all_proof_tree_stats(const LayeredCircuit& c, const Bits& z, const WeightAssignment& w) {
  check_inputs(c, z, w);
  std::vector<ProofTreeStats> out(c.size());
  if (fits_int64(c, w)) {
    std::vector<std::int64_t> small(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) small[i] = static_cast<std::int64_t>(w[i]);
    auto stats = run_dp(c, z, small);
    for (std::size_t g = 0; g < c.size(); ++g) {
      if (stats[g].count > 0) out[g] = {BigInt(stats[g].weight), stats[g].count};
    }
  } else {
    auto stats = run_dp(c, z, w);
    for (std::size_t g = 0; g < c.size(); ++g) {
      if (stats[g].count > 0) out[g] = {stats[g].weight, stats[g].count};
    }
  }
  return out;
}

ProofTreeStats proof_tree_stats(const LayeredCircuit& c, const Bits& z, const WeightAssignment& w, std::size_t g) {
  if (g >= c.size()) throw PreconditionError("gate out of range");
  return all_proof_tree_stats(c, z, w)[g];
}

bool circuit_weight_check(const LayeredCircuit& c, const Bits& z, const WeightAssignment& w,
                          std::optional<std::size_t> max_layer) {
  auto stats = all_proof_tree_stats(c, z, w);
  const std::size_t top = max_layer ? std::min(*max_layer, c.depth()) : c.depth();
  for (std::size_t k = 0; k <= top; ++k) {
    for (std::size_t g : c.layer(k)) {
      if (stats[g].count > 1) return false;
    }
  }
  return true;
}

std::optional<BigInt> circuit_weight_eval(const LayeredCircuit& c, const Bits& z, const WeightAssignment& w,
                                          std::size_t g) {
  if (g >= c.size()) throw PreconditionError("gate out of range");
  auto stats = all_proof_tree_stats(c, z, w);
  for (const auto& s : stats) {
    if (s.count > 1) throw PreconditionError("circuit_weight_eval requires a min-isolating assignment");
  }
  return stats[g].min_weight;
}

WeightAssignment construct_circuit_weights(const LayeredCircuit& c, const HashFamilyParams& family,
                                           const std::vector<HashSeed>& hashes, const WeightSchedule& schedule,
                                           unsigned i_target) {
  if (schedule.delta < 1) throw PreconditionError("delta must be >= 1");
  if (i_target > c.ell()) throw PreconditionError("target level exceeds the number of AND layers");
  const std::size_t needed = (i_target + schedule.delta - 1) / schedule.delta;
  if (hashes.size() < needed) {
    throw PreconditionError("level " + std::to_string(i_target) + " needs " + std::to_string(needed) +
                            " hash functions, got " + std::to_string(hashes.size()));
  }
  WeightAssignment w(c.size(), 0);
  for (unsigned ip = 1; ip <= i_target; ++ip) {
    const unsigned i1 = (ip - 1) / schedule.delta;
    const unsigned i0 = ip - 1 - schedule.delta * i1;
    for (std::size_t g : c.layer(2 * ip - 1)) {
      w[g] += BigInt(eval(family, hashes[i1], g)) << (schedule.gamma_log2 * i0);
    }
  }
  return w;
}

CocPlan plan_circuit_coc(const LayeredCircuit& c, const CocConfig& config) {
  CocPlan plan;
  plan.ell = c.ell();
  const std::uint64_t r = config.r ? *config.r : default_range(c.size());
  plan.family = family_params(c.size(), r);
  plan.schedule.delta = delta_for(plan.ell, config.alpha);
  plan.schedule.gamma_log2 = gamma_log2_for(c.size(), c.depth(), r);
  const std::size_t hashes = (plan.ell + plan.schedule.delta - 1) / plan.schedule.delta;
  const unsigned unit = std::max(1U, ceil_log2(c.size()));
  plan.layout = make_engine_layout(plan.family, unit, hashes, config.enum_cap);
  return plan;
}

GoodnessTest circuit_goodness(const LayeredCircuit& c, const Bits& z, const CocPlan& plan) {
  return [&c, z, plan](const std::vector<HashSeed>& prefix, const HashSeed& candidate) {
    std::vector<HashSeed> hashes = prefix;
    hashes.push_back(candidate);
    const unsigned level = plan.level_for_step(hashes.size());
    WeightAssignment w = construct_circuit_weights(c, plan.family, hashes, plan.schedule, level);
    return circuit_weight_check(c, z, w, std::size_t{2} * level);
  };
}

CircuitCocReport circuit_compress_or_compute(const LayeredCircuit& c, const Bits& z, CatalyticTape& tape,
                                             const CocPlan& plan) {
  CompressOrComputeEngine engine(plan.layout, circuit_goodness(c, z, plan));
  CircuitCocReport report;
  report.engine = engine.run(tape, [&](const std::vector<HashSeed>& hashes) {
    WeightAssignment w = construct_circuit_weights(c, plan.family, hashes, plan.schedule, plan.ell);
    report.min_weight = circuit_weight_eval(c, z, w, c.output());
    report.verdict = report.min_weight.has_value();
  });
  return report;
}

}  // namespace catiso
