#include "catiso/coc.hpp"

#include <algorithm>
#include <cmath>

#include "catiso/errors.hpp"

namespace catiso {

unsigned delta_for(unsigned ell, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw ConfigError("alpha must lie in [0, 0.5]");
  if (ell <= 1) return 1;
  double value = std::pow(static_cast<double>(ell), alpha);
  return std::max(1U, static_cast<unsigned>(std::ceil(value - 1e-9)));
}

std::uint64_t default_range(std::uint64_t n) {
  unsigned __int128 r = 1;
  for (int i = 0; i < 6; ++i) {
    r *= n;
    if (r > (static_cast<unsigned __int128>(1) << 62)) throw LimitError("n^6 exceeds the supported hash range");
  }
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(r));
}

unsigned CocPlan::level_for_step(std::size_t i) const {
  return static_cast<unsigned>(std::min<std::size_t>(i * schedule.delta, ell));
}

CocPlan plan_coc(const LayeredDag& g, const CocConfig& config) {
  CocPlan plan;
  plan.ell = g.ell();
  const std::uint64_t r = config.r ? *config.r : default_range(g.n());
  plan.family = family_params(g.n(), r);
  plan.schedule.delta = delta_for(plan.ell, config.alpha);
  plan.schedule.gamma_log2 = gamma_log2_for(g.n(), g.d(), r);
  const std::size_t hashes = (plan.ell + plan.schedule.delta - 1) / plan.schedule.delta;
  const unsigned unit = std::max(1U, ceil_log2(g.n()));
  plan.layout = make_engine_layout(plan.family, unit, hashes, config.enum_cap);
  return plan;
}

GoodnessTest dag_goodness(const LayeredDag& g, const CocPlan& plan) {
  return [&g, plan](const std::vector<HashSeed>& prefix, const HashSeed& candidate) {
    std::vector<HashSeed> hashes = prefix;
    hashes.push_back(candidate);
    const unsigned level = plan.level_for_step(hashes.size());
    WeightAssignment w = construct_weights(g, plan.family, hashes, plan.schedule, level);
    return weight_check(g, w, level);
  };
}

CocReport compress_or_compute(const LayeredDag& g, std::size_t s, std::size_t t, CatalyticTape& tape,
                              const CocPlan& plan) {
  if (s >= g.n() || t >= g.n()) throw PreconditionError("source or target vertex out of range");
  CompressOrComputeEngine engine(plan.layout, dag_goodness(g, plan));
  CocReport report;
  report.engine = engine.run(tape, [&](const std::vector<HashSeed>& hashes) {
    WeightAssignment w = construct_weights(g, plan.family, hashes, plan.schedule, plan.ell);
    report.distance = weight_eval(g, w, s, t);
    report.verdict = report.distance.has_value();
  });
  return report;
}

}  // namespace catiso
