#include "catiso/dag.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <string>

#include "catiso/errors.hpp"

namespace catiso {
namespace {

constexpr unsigned kSaturated = 2;

// Forward DP over layers layer(s)..last from source s. Entries of `dist` for
// unreached vertices are left untouched; `reached` lists the visited ones.
template <typename T>
struct ForwardDp {
  std::vector<T> dist;
  std::vector<unsigned> count;
  std::vector<std::size_t> reached;

  explicit ForwardDp(std::size_t n) : dist(n), count(n, 0) {}

  void reset() {
    for (std::size_t v : reached) count[v] = 0;
    reached.clear();
  }

  void run(const LayeredDag& g, const std::vector<T>& w, std::size_t s, std::size_t last) {
    reset();
    dist[s] = w[s];
    count[s] = 1;
    reached.push_back(s);
    for (std::size_t k = g.layer_of(s); k < last; ++k) {
      for (std::size_t u : g.layer(k)) {
        if (count[u] == 0) continue;
        for (std::size_t v : g.out(u)) {
          T candidate = dist[u] + w[v];
          if (count[v] == 0) {
            reached.push_back(v);
            dist[v] = candidate;
            count[v] = count[u];
          } else if (candidate < dist[v]) {
            dist[v] = candidate;
            count[v] = count[u];
          } else if (candidate == dist[v]) {
            count[v] = std::min(kSaturated, count[v] + count[u]);
          }
        }
      }
    }
  }
};

// Total weight fits comfortably in int64, so every path sum does too.
bool fits_int64(const WeightAssignment& w) {
  BigInt total = 0;
  const BigInt limit = BigInt(1) << 62;
  for (const auto& x : w) {
    if (x < 0) throw PreconditionError("weights must be nonnegative");
    total += x;
    if (total >= limit) return false;
  }
  return true;
}

std::vector<std::int64_t> to_int64(const WeightAssignment& w) {
  std::vector<std::int64_t> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<std::int64_t>(w[i]);
  return out;
}

void check_weights(const LayeredDag& g, const WeightAssignment& w) {
  if (w.size() != g.n()) {
    throw PreconditionError("weight assignment has " + std::to_string(w.size()) + " entries for " +
                            std::to_string(g.n()) + " vertices");
  }
}

template <typename T>
bool check_blocks(const LayeredDag& g, const std::vector<T>& w, unsigned level) {
  ForwardDp<T> dp(g.n());
  const std::size_t blocks = g.d() >> level;
  for (std::size_t j = 1; j <= blocks; ++j) {
    LayerRange range = block_layers(g, level, j);
    for (std::size_t k = range.first; k <= range.last; ++k) {
      for (std::size_t s : g.layer(k)) {
        dp.run(g, w, s, range.last);
        for (std::size_t v : dp.reached) {
          if (dp.count[v] >= 2) return false;
        }
      }
    }
  }
  return true;
}

template <typename T>
PathStats stats_from(const LayeredDag& g, const std::vector<T>& w, std::size_t s, std::size_t t) {
  PathStats stats;
  if (g.layer_of(t) < g.layer_of(s)) return stats;
  ForwardDp<T> dp(g.n());
  dp.run(g, w, s, g.layer_of(t));
  if (dp.count[t] == 0) return stats;
  stats.min_weight = BigInt(dp.dist[t]);
  stats.count = dp.count[t];
  return stats;
}

}  // namespace

std::size_t max_bits(const WeightAssignment& w) {
  std::size_t bits = 0;
  for (const auto& x : w) {
    if (x > 0) bits = std::max<std::size_t>(bits, boost::multiprecision::msb(x) + 1);
  }
  return bits;
}

LayeredDag::LayeredDag(std::vector<std::vector<std::size_t>> layers,
                       std::vector<std::pair<std::size_t, std::size_t>> edges)
    : layers_(std::move(layers)), edges_(std::move(edges)) {
  if (layers_.empty()) throw FormatError("graph has no layers");
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.size();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  layer_of_.assign(n, kUnset);
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    for (std::size_t v : layers_[k]) {
      if (v >= n) throw FormatError("vertex id " + std::to_string(v) + " out of range [0," + std::to_string(n) + ")");
      if (layer_of_[v] != kUnset) throw FormatError("vertex " + std::to_string(v) + " listed twice");
      layer_of_[v] = k;
    }
  }
  out_.assign(n, {});
  in_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, v] : edges_) {
    if (u >= n || v >= n) throw FormatError("edge endpoint out of range");
    if (layer_of_[v] != layer_of_[u] + 1) {
      throw FormatError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") does not join adjacent layers");
    }
    if (!seen.insert({u, v}).second) {
      throw FormatError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    out_[u].push_back(v);
    in_[v].push_back(u);
  }

  original_layers_ = layers_.size();
  std::size_t d = layers_.size() - 1;
  std::size_t padded = 2;
  ell_ = 1;
  while (padded < d) {
    padded *= 2;
    ++ell_;
  }
  layers_.resize(padded + 1);
}

bool LayeredDag::reachable(std::size_t s, std::size_t t) const {
  if (s >= n() || t >= n()) throw PreconditionError("vertex out of range");
  std::vector<bool> seen(n(), false);
  std::deque<std::size_t> queue{s};
  seen[s] = true;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    if (u == t) return true;
    for (std::size_t v : out_[u]) {
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return false;
}

LayerRange block_layers(const LayeredDag& g, unsigned i, std::size_t j) {
  if (i > g.ell()) throw PreconditionError("block level " + std::to_string(i) + " exceeds ell");
  const std::size_t width = std::size_t{1} << i;
  if (j < 1 || j > (g.d() >> i)) {
    throw PreconditionError("block index " + std::to_string(j) + " out of range at level " + std::to_string(i));
  }
  return {(j - 1) * width, j * width};
}

std::vector<std::size_t> block_vertices(const LayeredDag& g, unsigned i, std::size_t j) {
  LayerRange range = block_layers(g, i, j);
  std::vector<std::size_t> out;
  for (std::size_t k = range.first; k <= range.last; ++k) {
    out.insert(out.end(), g.layer(k).begin(), g.layer(k).end());
  }
  return out;
}

std::size_t middle_layer(const LayeredDag& g, unsigned i, std::size_t j) {
  if (i == 0) throw PreconditionError("level-0 blocks have no middle layer");
  block_layers(g, i, j);
  return (2 * j - 1) * (std::size_t{1} << (i - 1));
}

std::vector<std::size_t> level_layers(const LayeredDag& g, unsigned i) {
  if (i < 1 || i > g.ell()) throw PreconditionError("L_i defined for 1 <= i <= ell");
  const std::size_t step = std::size_t{1} << (i - 1);
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j * step <= g.d(); j += 2) out.push_back(j * step);
  return out;
}

unsigned gamma_log2_for(std::uint64_t n, std::uint64_t d, std::uint64_t r) {
  unsigned __int128 x = static_cast<unsigned __int128>(2) * n * (d + 1);
  x *= r;
  unsigned bits = 0;
  while ((static_cast<unsigned __int128>(1) << bits) < x) ++bits;
  return bits;
}

WeightAssignment construct_weights(const LayeredDag& g, const HashFamilyParams& family,
                                   const std::vector<HashSeed>& hashes, const WeightSchedule& schedule,
                                   unsigned i_target) {
  if (schedule.delta < 1) throw PreconditionError("delta must be >= 1");
  if (i_target > g.ell()) throw PreconditionError("target level exceeds ell");
  const std::size_t needed = (i_target + schedule.delta - 1) / schedule.delta;
  if (hashes.size() < needed) {
    throw PreconditionError("level " + std::to_string(i_target) + " needs " + std::to_string(needed) +
                            " hash functions, got " + std::to_string(hashes.size()));
  }
  WeightAssignment w(g.n(), 0);
  for (unsigned ip = 1; ip <= i_target; ++ip) {
    const unsigned i1 = (ip - 1) / schedule.delta;
    const unsigned i0 = ip - 1 - schedule.delta * i1;
    for (std::size_t k : level_layers(g, ip)) {
      for (std::size_t v : g.layer(k)) {
        w[v] = BigInt(eval(family, hashes[i1], v)) << (schedule.gamma_log2 * i0);
      }
    }
  }
  return w;
}

PathStats min_path_stats(const LayeredDag& g, const WeightAssignment& w, std::size_t s, std::size_t t) {
  check_weights(g, w);
  if (s >= g.n() || t >= g.n()) throw PreconditionError("vertex out of range");
  if (fits_int64(w)) return stats_from(g, to_int64(w), s, t);
  return stats_from(g, w, s, t);
}

bool weight_check(const LayeredDag& g, const WeightAssignment& w, unsigned level) {
  check_weights(g, w);
  if (level > g.ell()) throw PreconditionError("level exceeds ell");
  if (fits_int64(w)) return check_blocks(g, to_int64(w), level);
  return check_blocks(g, w, level);
}

std::optional<BigInt> weight_eval(const LayeredDag& g, const WeightAssignment& w, std::size_t s, std::size_t t) {
  if (!weight_check(g, w, g.ell())) throw PreconditionError("weight_eval requires a min-isolating assignment");
  return min_path_stats(g, w, s, t).min_weight;
}

bool disambiguation_holds(const LayeredDag& g, const WeightAssignment& w_i, const WeightAssignment& w_next,
                          unsigned i, std::size_t j) {
  check_weights(g, w_i);
  check_weights(g, w_next);
  LayerRange range = block_layers(g, i + 1, j);
  const std::size_t mid = middle_layer(g, i + 1, j);
  const auto& middle = g.layer(mid);
  if (middle.size() < 2) return true;

  // mu(u, t) for every middle vertex u, under w_i.
  std::vector<std::vector<PathStats>> from_middle(middle.size());
  for (std::size_t a = 0; a < middle.size(); ++a) {
    from_middle[a].resize(g.n());
    for (std::size_t k = mid + 1; k <= range.last; ++k) {
      for (std::size_t t : g.layer(k)) from_middle[a][t] = min_path_stats(g, w_i, middle[a], t);
    }
  }

  for (std::size_t ks = range.first; ks < mid; ++ks) {
    for (std::size_t s : g.layer(ks)) {
      std::vector<PathStats> to_middle(middle.size());
      for (std::size_t a = 0; a < middle.size(); ++a) to_middle[a] = min_path_stats(g, w_i, s, middle[a]);
      for (std::size_t kt = mid + 1; kt <= range.last; ++kt) {
        for (std::size_t t : g.layer(kt)) {
          std::vector<BigInt> through;
          for (std::size_t a = 0; a < middle.size(); ++a) {
            const auto& left = to_middle[a].min_weight;
            const auto& right = from_middle[a][t].min_weight;
            if (!left || !right) continue;
            const std::size_t u = middle[a];
            BigInt total = *left + *right - 2 * w_i[u] + w_next[u];
            if (std::find(through.begin(), through.end(), total) != through.end()) return false;
            through.push_back(total);
          }
        }
      }
    }
  }
  return true;
}

}  // namespace catiso
