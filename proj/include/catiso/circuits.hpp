#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "catiso/coc.hpp"
#include "catiso/dag.hpp"

namespace catiso {

enum class GateKind { And, Or, Lit };

struct Gate {
  GateKind kind = GateKind::Lit;
  std::vector<std::size_t> children;
  // Literals: +v / -v for variable v (1-based); 0 with `constant` for true/false.
  int literal = 0;
  bool constant = false;
};

// Semi-unbounded circuit in layers V_0..V_d (d = 2*ell): V_0 literals, odd
// layers fan-in-2 AND, even layers OR; wires join consecutive layers.
class LayeredCircuit {
 public:
  LayeredCircuit(std::vector<Gate> gates, std::vector<std::vector<std::size_t>> layers, std::size_t output);

  std::size_t size() const { return gates_.size(); }
  std::size_t depth() const { return layers_.size() - 1; }
  unsigned ell() const { return static_cast<unsigned>(depth() / 2); }
  std::size_t output() const { return output_; }
  std::size_t variables() const { return variables_; }
  const Gate& gate(std::size_t g) const { return gates_.at(g); }
  const std::vector<std::size_t>& layer(std::size_t k) const { return layers_.at(k); }
  std::size_t layer_of(std::size_t g) const { return layer_of_.at(g); }

 private:
  std::vector<Gate> gates_;
  std::vector<std::vector<std::size_t>> layers_;
  std::vector<std::size_t> layer_of_;
  std::size_t output_;
  std::size_t variables_ = 0;
};

// Value of every gate under assignment z (z[v-1] is variable v).
std::vector<bool> eval_circuit(const LayeredCircuit& c, const Bits& z);

struct ProofTreeStats {
  std::optional<BigInt> min_weight;
  unsigned count = 0;  // saturates at 2
};

std::vector<ProofTreeStats> all_proof_tree_stats(const LayeredCircuit& c, const Bits& z, const WeightAssignment& w);
ProofTreeStats proof_tree_stats(const LayeredCircuit& c, const Bits& z, const WeightAssignment& w, std::size_t g);

// Every gate in layers <= max_layer has at most one min-weight proof tree.
bool circuit_weight_check(const LayeredCircuit& c, const Bits& z, const WeightAssignment& w,
                          std::optional<std::size_t> max_layer = std::nullopt);
std::optional<BigInt> circuit_weight_eval(const LayeredCircuit& c, const Bits& z, const WeightAssignment& w,
                                          std::size_t g);

// Hash-and-shift weights on the AND layers L_i = V_{2i-1}, i <= i_target.
WeightAssignment construct_circuit_weights(const LayeredCircuit& c, const HashFamilyParams& family,
                                           const std::vector<HashSeed>& hashes, const WeightSchedule& schedule,
                                           unsigned i_target);

CocPlan plan_circuit_coc(const LayeredCircuit& c, const CocConfig& config);
GoodnessTest circuit_goodness(const LayeredCircuit& c, const Bits& z, const CocPlan& plan);

struct CircuitCocReport {
  EngineReport engine;
  bool verdict = false;
  std::optional<BigInt> min_weight;
};

CircuitCocReport circuit_compress_or_compute(const LayeredCircuit& c, const Bits& z, CatalyticTape& tape,
                                             const CocPlan& plan);

}  // namespace catiso
