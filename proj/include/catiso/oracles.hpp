#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catiso/cnf.hpp"
#include "catiso/poly.hpp"

namespace catiso {

// Element weights for the search-to-decision reduction. Desk-scale values
// (including the m^10 input scaling for m <= 24) fit in 64 bits.
using Weights = std::vector<std::int64_t>;

std::int64_t weight_of(Mask y, const Weights& w);

// A witness relation R(x, y) over y in {0,1}^m; bit e of y is element e.
struct Relation {
  std::string name;
  unsigned m = 0;
  std::function<bool(Mask)> accepts;
};

// All accepted y in ascending order (m <= 24).
std::vector<Mask> enumerate_witnesses(const Relation& relation);
std::string format_witness(Mask y, unsigned m);

struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<bool> red;  // per edge; empty when uncolored
};

struct Digraph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
};

void validate(const Graph& g);
void validate(const Digraph& g);

Relation k_subset_relation(unsigned m, unsigned k);
Relation sat_relation(const Cnf& cnf);
Relation matching_relation(const Graph& g);
Relation exact_matching_relation(const Graph& g, unsigned k);
Relation arborescence_relation(const Digraph& g, std::size_t root);

class WeightedDecisionOracle {
 public:
  virtual ~WeightedDecisionOracle() = default;

  // Is there a witness y with W(y) <= w0?
  bool query(const Weights& w, std::int64_t w0) {
    ++queries_;
    return answer(w, w0);
  }
  std::uint64_t queries() const { return queries_; }
  void reset_queries() { queries_ = 0; }
  virtual unsigned m() const = 0;

 protected:
  virtual bool answer(const Weights& w, std::int64_t w0) = 0;

 private:
  std::uint64_t queries_ = 0;
};

class BruteForceOracle : public WeightedDecisionOracle {
 public:
  explicit BruteForceOracle(Relation relation);
  unsigned m() const override { return relation_.m; }
  const std::vector<Mask>& witnesses() const { return witnesses_; }

 protected:
  bool answer(const Weights& w, std::int64_t w0) override;

 private:
  Relation relation_;
  std::vector<Mask> witnesses_;
};

// Per-weight witness counts for a weight assignment.
using WitnessCounter = std::function<Polynomial(const Weights&)>;

class CountingOracle : public WeightedDecisionOracle {
 public:
  CountingOracle(unsigned m, WitnessCounter counter);
  unsigned m() const override { return m_; }

 protected:
  bool answer(const Weights& w, std::int64_t w0) override;

 private:
  unsigned m_;
  WitnessCounter counter_;
  std::map<Weights, Polynomial> cache_;
};

// Checks monotonicity in w0 on every `period`-th query by also asking w0+1.
class MonotonicityChecked : public WeightedDecisionOracle {
 public:
  MonotonicityChecked(WeightedDecisionOracle& inner, unsigned period);
  unsigned m() const override { return inner_.m(); }
  std::uint64_t checks() const { return checks_; }

 protected:
  bool answer(const Weights& w, std::int64_t w0) override;

 private:
  WeightedDecisionOracle& inner_;
  unsigned period_;
  std::uint64_t seen_ = 0;
  std::uint64_t checks_ = 0;
};

std::unique_ptr<WeightedDecisionOracle> brute_force_oracle(Relation relation);
std::unique_ptr<WeightedDecisionOracle> counting_oracle_to_decision(unsigned m, WitnessCounter counter);

enum class DetMethod { Interpolation, Bareiss };

// Arborescences rooted at `root`, counted per total weight: the determinant
// of the root-deleted in-degree Laplacian with arc entries y^w.
Polynomial matrix_tree_count(const Digraph& g, const Weights& arc_weights, std::size_t root,
                             DetMethod method = DetMethod::Interpolation);

// Polynomial through p(1), ..., p(D+1) for integer-coefficient p of degree <= D.
Polynomial interpolate_integer_polynomial(const std::vector<BigInt>& values);

}  // namespace catiso
