#pragma once

#include <cstdint>
#include <optional>

#include "catiso/dag.hpp"
#include "catiso/engine.hpp"

namespace catiso {

struct CocConfig {
  double alpha = 0.0;
  std::optional<std::uint64_t> r;  // default n^6
  std::uint64_t enum_cap = std::uint64_t{1} << 22;
};

// Delta = max(1, ceil(ell^alpha)).
unsigned delta_for(unsigned ell, double alpha);
// n^6, clamped below at 2.
std::uint64_t default_range(std::uint64_t n);

struct CocPlan {
  HashFamilyParams family;
  WeightSchedule schedule;
  unsigned ell = 0;
  EngineLayout layout;

  // Block-system level checked at step i (1-based).
  unsigned level_for_step(std::size_t i) const;
};

CocPlan plan_coc(const LayeredDag& g, const CocConfig& config);

// Goodness of the i-th hash: w_{i*Delta} built from prefix + candidate is
// min-isolating for the block system at that level.
GoodnessTest dag_goodness(const LayeredDag& g, const CocPlan& plan);

struct CocReport {
  EngineReport engine;
  bool verdict = false;
  std::optional<BigInt> distance;  // min s-t weight under the final assignment
};

CocReport compress_or_compute(const LayeredDag& g, std::size_t s, std::size_t t, CatalyticTape& tape,
                              const CocPlan& plan);

}  // namespace catiso
