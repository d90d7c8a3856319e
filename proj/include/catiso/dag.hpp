#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "catiso/hashing.hpp"

namespace catiso {

using BigInt = boost::multiprecision::cpp_int;
using WeightAssignment = std::vector<BigInt>;

std::size_t max_bits(const WeightAssignment& w);

// Layered DAG with layers V_0..V_d, d a power of two (>= 2). Vertices are
// 0..n-1; every edge goes from layer k to layer k+1.
class LayeredDag {
 public:
  // Validates the layering and pads d up to a power of two with empty layers.
  LayeredDag(std::vector<std::vector<std::size_t>> layers, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t n() const { return layer_of_.size(); }
  std::size_t d() const { return layers_.size() - 1; }
  unsigned ell() const { return ell_; }
  std::size_t layer_of(std::size_t v) const { return layer_of_.at(v); }
  const std::vector<std::size_t>& layer(std::size_t k) const { return layers_.at(k); }
  const std::vector<std::vector<std::size_t>>& layers() const { return layers_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<std::size_t>& out(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in(std::size_t v) const { return in_[v]; }
  // Layer count before padding.
  std::size_t original_layers() const { return original_layers_; }

  bool reachable(std::size_t s, std::size_t t) const;

 private:
  std::vector<std::vector<std::size_t>> layers_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::size_t> layer_of_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::size_t original_layers_ = 0;
  unsigned ell_ = 0;
};

struct LayerRange {
  std::size_t first = 0;
  std::size_t last = 0;
};

// B^i_j (1-based j) as a closed layer range.
LayerRange block_layers(const LayeredDag& g, unsigned i, std::size_t j);
std::vector<std::size_t> block_vertices(const LayeredDag& g, unsigned i, std::size_t j);
// Middle layer (2j-1)*2^(i-1) of B^i_j; requires i >= 1.
std::size_t middle_layer(const LayeredDag& g, unsigned i, std::size_t j);
// Layer indices of L_i = union over odd j of V_{j*2^(i-1)}, i >= 1.
std::vector<std::size_t> level_layers(const LayeredDag& g, unsigned i);

struct WeightSchedule {
  unsigned delta = 1;
  unsigned gamma_log2 = 0;  // gamma = 2^gamma_log2
};

// gamma = 2^ceil(log2(2 n (d+1) r)).
unsigned gamma_log2_for(std::uint64_t n, std::uint64_t d, std::uint64_t r);

WeightAssignment construct_weights(const LayeredDag& g, const HashFamilyParams& family,
                                   const std::vector<HashSeed>& hashes, const WeightSchedule& schedule,
                                   unsigned i_target);

struct PathStats {
  std::optional<BigInt> min_weight;  // nullopt: unreachable
  unsigned count = 0;                // saturates at 2
};

// Path weight is the sum over all vertices of the path, endpoints included.
PathStats min_path_stats(const LayeredDag& g, const WeightAssignment& w, std::size_t s, std::size_t t);

// True iff within every block of B^level every s-t pair has at most one min-weight path.
bool weight_check(const LayeredDag& g, const WeightAssignment& w, unsigned level);

// Min s-t path weight; requires weight_check(g, w, ell).
std::optional<BigInt> weight_eval(const LayeredDag& g, const WeightAssignment& w, std::size_t s, std::size_t t);

// Disambiguation condition for block B^{i+1}_j: w_i is the level-i
// assignment, w_next its extension onto the middle layer of the block.
bool disambiguation_holds(const LayeredDag& g, const WeightAssignment& w_i, const WeightAssignment& w_next,
                          unsigned i, std::size_t j);

}  // namespace catiso
