#include "catiso/oracles.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

namespace catiso {
namespace {

constexpr unsigned kMaxEnumerable = 24;

void check_enumerable(unsigned m) {
  if (m > kMaxEnumerable) {
    throw LimitError("witness space 2^" + std::to_string(m) + " exceeds the brute-force cap 2^" +
                     std::to_string(kMaxEnumerable));
  }
}

bool is_perfect_matching(const Graph& g, Mask y) {
  std::vector<unsigned> degree(g.n, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if ((y >> e) & 1U) {
      if (++degree[g.edges[e].first] > 1 || ++degree[g.edges[e].second] > 1) return false;
    }
  }
  return std::all_of(degree.begin(), degree.end(), [](unsigned d) { return d == 1; });
}

}  // namespace

std::int64_t weight_of(Mask y, const Weights& w) {
  std::int64_t total = 0;
  while (y != 0) {
    const int e = std::countr_zero(y);
    total += w[static_cast<std::size_t>(e)];
    y &= y - 1;
  }
  return total;
}

std::vector<Mask> enumerate_witnesses(const Relation& relation) {
  check_enumerable(relation.m);
  std::vector<Mask> out;
  for (Mask y = 0; y < (Mask{1} << relation.m); ++y) {
    if (relation.accepts(y)) out.push_back(y);
  }
  return out;
}

std::string format_witness(Mask y, unsigned m) {
  std::string out(m, '0');
  for (unsigned e = 0; e < m; ++e) {
    if ((y >> e) & 1U) out[e] = '1';
  }
  return out;
}

void validate(const Graph& g) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, v] : g.edges) {
    if (u >= g.n || v >= g.n) throw FormatError("edge endpoint out of range");
    if (u == v) throw FormatError("self-loops are not allowed");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw FormatError("duplicate edge");
  }
  if (!g.red.empty() && g.red.size() != g.edges.size()) throw FormatError("color list must cover every edge");
  if (g.edges.size() > 64) throw LimitError("at most 64 edges supported");
}

void validate(const Digraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto arc : g.arcs) {
    if (arc.first >= g.n || arc.second >= g.n) throw FormatError("arc endpoint out of range");
    if (arc.first == arc.second) throw FormatError("self-loops are not allowed");
    if (!seen.insert(arc).second) throw FormatError("duplicate arc");
  }
  if (g.arcs.size() > 64) throw LimitError("at most 64 arcs supported");
}

Relation k_subset_relation(unsigned m, unsigned k) {
  if (m > 64) throw LimitError("at most 64 elements supported");
  return {"k-subset", m, [k](Mask y) { return static_cast<unsigned>(std::popcount(y)) == k; }};
}

Relation sat_relation(const Cnf& cnf) {
  return {"sat", cnf.vars, [cnf](Mask y) { return cnf.satisfied(y); }};
}

Relation matching_relation(const Graph& g) {
  validate(g);
  return {"pm", static_cast<unsigned>(g.edges.size()), [g](Mask y) { return is_perfect_matching(g, y); }};
}

Relation exact_matching_relation(const Graph& g, unsigned k) {
  validate(g);
  if (g.red.size() != g.edges.size()) throw FormatError("exact matching needs a color for every edge");
  Mask red_mask = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (g.red[e]) red_mask |= Mask{1} << e;
  }
  if (k > static_cast<unsigned>(std::popcount(red_mask))) throw PreconditionError("k exceeds the number of red edges");
  return {"exact-pm", static_cast<unsigned>(g.edges.size()), [g, k, red_mask](Mask y) {
            return static_cast<unsigned>(std::popcount(y & red_mask)) == k && is_perfect_matching(g, y);
          }};
}

Relation arborescence_relation(const Digraph& g, std::size_t root) {
  validate(g);
  if (root >= g.n) throw PreconditionError("root out of range");
  return {"arborescence", static_cast<unsigned>(g.arcs.size()), [g, root](Mask y) {
            std::vector<std::size_t> parent(g.n, g.n);
            std::vector<unsigned> indegree(g.n, 0);
            for (std::size_t e = 0; e < g.arcs.size(); ++e) {
              if ((y >> e) & 1U) {
                const auto [u, v] = g.arcs[e];
                if (++indegree[v] > 1) return false;
                parent[v] = u;
              }
            }
            if (indegree[root] != 0) return false;
            for (std::size_t v = 0; v < g.n; ++v) {
              if (v != root && indegree[v] != 1) return false;
            }
            // Every vertex must reach the root by parent links within n steps.
            for (std::size_t v = 0; v < g.n; ++v) {
              std::size_t x = v;
              std::size_t steps = 0;
              while (x != root) {
                x = parent[x];
                if (++steps > g.n) return false;
              }
            }
            return true;
          }};
}

BruteForceOracle::BruteForceOracle(Relation relation)
    : relation_(std::move(relation)), witnesses_(enumerate_witnesses(relation_)) {}

bool BruteForceOracle::answer(const Weights& w, std::int64_t w0) {
  if (w.size() != relation_.m) throw PreconditionError("weight assignment length does not match m");
  if (w0 < 0) return false;
  for (Mask y : witnesses_) {
    if (weight_of(y, w) <= w0) return true;
  }
  return false;
}

CountingOracle::CountingOracle(unsigned m, WitnessCounter counter) : m_(m), counter_(std::move(counter)) {}

bool CountingOracle::answer(const Weights& w, std::int64_t w0) {
  if (w.size() != m_) throw PreconditionError("weight assignment length does not match m");
  if (w0 < 0) return false;
  auto it = cache_.find(w);
  if (it == cache_.end()) it = cache_.emplace(w, counter_(w)).first;
  for (const auto& [exponent, count] : it->second.terms()) {
    if (exponent > static_cast<std::uint64_t>(w0)) break;
    if (count > 0) return true;
  }
  return false;
}

MonotonicityChecked::MonotonicityChecked(WeightedDecisionOracle& inner, unsigned period)
    : inner_(inner), period_(std::max(1U, period)) {}

bool MonotonicityChecked::answer(const Weights& w, std::int64_t w0) {
  const bool result = inner_.query(w, w0);
  if (++seen_ % period_ == 0) {
    ++checks_;
    if (result && !inner_.query(w, w0 + 1)) {
      throw CorruptionError("oracle is not monotone in w0 at w0=" + std::to_string(w0));
    }
  }
  return result;
}

std::unique_ptr<WeightedDecisionOracle> brute_force_oracle(Relation relation) {
  return std::make_unique<BruteForceOracle>(std::move(relation));
}

std::unique_ptr<WeightedDecisionOracle> counting_oracle_to_decision(unsigned m, WitnessCounter counter) {
  return std::make_unique<CountingOracle>(m, std::move(counter));
}

Polynomial interpolate_integer_polynomial(const std::vector<BigInt>& values) {
  if (values.empty()) return {};
  const std::size_t degree = values.size() - 1;
  // Forward differences at y = 1; Delta^j p(1) is divisible by j! for integer p.
  std::vector<BigInt> diff = values;
  std::vector<BigInt> coeff(values.size());
  BigInt factorial = 1;
  for (std::size_t j = 0; j <= degree; ++j) {
    if (j > 0) factorial *= j;
    if (diff[0] % factorial != 0) throw CorruptionError("interpolation values are not an integer polynomial");
    coeff[j] = diff[0] / factorial;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  // p(y) = sum_j coeff[j] (y-1)(y-2)...(y-j), expanded by Horner.
  std::vector<BigInt> poly{coeff[degree]};
  for (std::size_t j = degree; j-- > 0;) {
    std::vector<BigInt> next(poly.size() + 1, 0);
    const BigInt shift = j + 1;
    for (std::size_t e = 0; e < poly.size(); ++e) {
      next[e + 1] += poly[e];
      next[e] -= shift * poly[e];
    }
    next[0] += coeff[j];
    poly = std::move(next);
  }
  return Polynomial::from_dense(poly);
}

Polynomial matrix_tree_count(const Digraph& g, const Weights& arc_weights, std::size_t root, DetMethod method) {
  validate(g);
  if (root >= g.n) throw PreconditionError("root out of range");
  if (arc_weights.size() != g.arcs.size()) throw PreconditionError("one weight per arc required");
  for (auto w : arc_weights) {
    if (w < 0) throw PreconditionError("arc weights must be nonnegative");
  }
  // Non-root vertices, re-indexed.
  std::vector<std::size_t> index(g.n, g.n);
  std::size_t size = 0;
  for (std::size_t v = 0; v < g.n; ++v) {
    if (v != root) index[v] = size++;
  }
  if (size == 0) return Polynomial(BigInt(1));

  if (method == DetMethod::Bareiss) {
    std::vector<std::vector<Polynomial>> lap(size, std::vector<Polynomial>(size));
    for (std::size_t e = 0; e < g.arcs.size(); ++e) {
      const auto [u, v] = g.arcs[e];
      if (v == root) continue;
      const auto mono = Polynomial::monomial(static_cast<std::uint64_t>(arc_weights[e]));
      lap[index[v]][index[v]] += mono;
      if (u != root) lap[index[u]][index[v]] -= mono;
    }
    return bareiss_determinant(std::move(lap));
  }

  std::vector<std::int64_t> max_in(g.n, -1);
  for (std::size_t e = 0; e < g.arcs.size(); ++e) {
    const auto v = g.arcs[e].second;
    max_in[v] = std::max(max_in[v], arc_weights[e]);
  }
  std::uint64_t degree = 0;
  for (std::size_t v = 0; v < g.n; ++v) {
    if (v == root) continue;
    if (max_in[v] < 0) return {};  // a vertex without in-arcs: no arborescence
    degree += static_cast<std::uint64_t>(max_in[v]);
  }
  if (degree > 100000) throw LimitError("interpolation degree too large; use the Bareiss method");
  std::vector<BigInt> values;
  values.reserve(degree + 1);
  for (std::uint64_t y = 1; y <= degree + 1; ++y) {
    std::vector<std::vector<BigInt>> lap(size, std::vector<BigInt>(size, 0));
    for (std::size_t e = 0; e < g.arcs.size(); ++e) {
      const auto [u, v] = g.arcs[e];
      if (v == root) continue;
      const BigInt term = boost::multiprecision::pow(BigInt(y), static_cast<unsigned>(arc_weights[e]));
      lap[index[v]][index[v]] += term;
      if (u != root) lap[index[u]][index[v]] -= term;
    }
    values.push_back(bareiss_determinant(std::move(lap)));
  }
  return interpolate_integer_polynomial(values);
}

}  // namespace catiso
