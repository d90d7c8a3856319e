#pragma once

// Independent reference implementations and random instance generators for
// the unit and acceptance tests. Nothing here calls the library's own DP,
// enumeration or determinant code.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "catiso/circuits.hpp"
#include "catiso/cnf.hpp"
#include "catiso/dag.hpp"
#include "catiso/oracles.hpp"

namespace testkit {

using catiso::BigInt;
using catiso::Mask;
using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// ---- layered DAGs ----

struct DagSpec {
  std::vector<std::vector<std::size_t>> layers;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Vertex ids are shuffled so they do not follow layer order.
inline DagSpec random_dag(Rng& rng, std::size_t layer_count, std::size_t max_width, double edge_p) {
  std::vector<std::size_t> widths(layer_count);
  std::size_t n = 0;
  for (auto& w : widths) {
    w = uniform(rng, 1, max_width);
    n += w;
  }
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  DagSpec spec;
  std::size_t next = 0;
  for (std::size_t k = 0; k < layer_count; ++k) {
    spec.layers.emplace_back(ids.begin() + static_cast<std::ptrdiff_t>(next),
                             ids.begin() + static_cast<std::ptrdiff_t>(next + widths[k]));
    next += widths[k];
  }
  for (std::size_t k = 0; k + 1 < layer_count; ++k) {
    for (std::size_t u : spec.layers[k]) {
      for (std::size_t v : spec.layers[k + 1]) {
        if (coin(rng, edge_p)) spec.edges.emplace_back(u, v);
      }
    }
  }
  return spec;
}

inline catiso::LayeredDag make_dag(const DagSpec& spec) { return catiso::LayeredDag(spec.layers, spec.edges); }

inline bool bfs_reachable(const DagSpec& spec, std::size_t s, std::size_t t) {
  std::size_t n = 0;
  for (const auto& l : spec.layers) n += l.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : spec.edges) adj[u].push_back(v);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> q{s};
  seen[s] = true;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop_front();
    if (u == t) return true;
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        q.push_back(v);
      }
    }
  }
  return false;
}

struct PathSummary {
  std::optional<BigInt> min_weight;
  unsigned count = 0;  // number of min-weight paths, saturated at 2
};

// Explicit enumeration of every s-t path; weights include both endpoints.
inline PathSummary enumerate_paths(const catiso::LayeredDag& g, const catiso::WeightAssignment& w, std::size_t s,
                                   std::size_t t) {
  PathSummary out;
  std::function<void(std::size_t, BigInt)> walk = [&](std::size_t u, BigInt acc) {
    if (u == t) {
      if (!out.min_weight || acc < *out.min_weight) {
        out.min_weight = acc;
        out.count = 1;
      } else if (acc == *out.min_weight) {
        out.count = std::min(2U, out.count + 1);
      }
      return;
    }
    for (std::size_t v : g.out(u)) walk(v, acc + w[v]);
  };
  walk(s, w[s]);
  return out;
}

// Independent reading of "isolating at level i": for every block of the
// level-i system and every pair (s, t) inside it, at most one min path.
inline bool isolating_by_enumeration(const catiso::LayeredDag& g, const catiso::WeightAssignment& w, unsigned level) {
  const std::size_t span = std::size_t{1} << level;
  for (std::size_t first = 0; first + span <= g.d(); first += span) {
    const std::size_t last = first + span;
    for (std::size_t a = first; a <= last; ++a) {
      for (std::size_t s : g.layer(a)) {
        for (std::size_t b = a; b <= last; ++b) {
          for (std::size_t t : g.layer(b)) {
            if (enumerate_paths(g, w, s, t).count > 1) return false;
          }
        }
      }
    }
  }
  return true;
}

// ---- circuits ----

struct CircuitSpec {
  std::vector<catiso::Gate> gates;
  std::vector<std::vector<std::size_t>> layers;
  std::size_t output = 0;
  std::size_t vars = 0;
};

// Semi-unbounded layered circuit of depth 2*ell with at most `max_gates` gates.
inline CircuitSpec random_circuit(Rng& rng, unsigned ell, std::size_t max_gates, std::size_t vars) {
  using catiso::Gate;
  using catiso::GateKind;
  const std::size_t depth = 2 * ell;
  // Budget: literals, then at least 1 gate per layer; output layer is a single gate.
  std::vector<std::size_t> widths(depth + 1, 1);
  std::size_t spare = max_gates > depth + 2 ? max_gates - depth - 1 : 1;
  widths[0] = std::max<std::size_t>(2, uniform(rng, 2, std::min<std::size_t>(spare, 2 * vars + 2)));
  spare -= std::min(spare, widths[0]);
  for (std::size_t k = 1; k < depth; ++k) {
    const std::size_t extra = spare == 0 ? 0 : uniform(rng, 0, std::min<std::size_t>(spare, 5));
    widths[k] += extra;
    spare -= extra;
  }
  // An AND layer needs two distinct children below.
  for (std::size_t k = 1; k < depth; ++k) {
    if (k % 2 == 0 && widths[k] < 2) widths[k] = 2;
  }
  CircuitSpec spec;
  spec.vars = vars;
  for (std::size_t k = 0; k <= depth; ++k) {
    spec.layers.emplace_back();
    for (std::size_t i = 0; i < widths[k]; ++i) {
      Gate gate;
      const std::size_t id = spec.gates.size();
      if (k == 0) {
        gate.kind = GateKind::Lit;
        if (i < 2 * vars) {
          const int v = static_cast<int>(i / 2) + 1;
          gate.literal = i % 2 == 0 ? v : -v;
        } else {
          gate.literal = 0;
          gate.constant = coin(rng, 0.5);
        }
      } else {
        const auto& below = spec.layers[k - 1];
        if (k % 2 == 1) {
          gate.kind = GateKind::And;
          std::size_t a = below[uniform(rng, 0, below.size() - 1)];
          std::size_t b = a;
          while (b == a) b = below[uniform(rng, 0, below.size() - 1)];
          gate.children = {a, b};
        } else {
          gate.kind = GateKind::Or;
          std::vector<std::size_t> pool = below;
          std::shuffle(pool.begin(), pool.end(), rng);
          pool.resize(uniform(rng, 1, std::min<std::size_t>(pool.size(), 3)));
          gate.children = pool;
        }
      }
      spec.gates.push_back(gate);
      spec.layers.back().push_back(id);
    }
  }
  spec.output = spec.layers.back().front();
  return spec;
}

inline catiso::LayeredCircuit make_circuit(const CircuitSpec& spec) {
  return catiso::LayeredCircuit(spec.gates, spec.layers, spec.output);
}

inline bool literal_true(const catiso::Gate& gate, const catiso::Bits& z) {
  if (gate.literal == 0) return gate.constant;
  const bool x = z[static_cast<std::size_t>(std::abs(gate.literal)) - 1];
  return gate.literal > 0 ? x : !x;
}

// Recursive circuit value straight from the gate definitions.
inline bool eval_recursive(const CircuitSpec& spec, const catiso::Bits& z, std::size_t g) {
  const auto& gate = spec.gates[g];
  switch (gate.kind) {
    case catiso::GateKind::Lit:
      return literal_true(gate, z);
    case catiso::GateKind::And:
      return eval_recursive(spec, z, gate.children[0]) && eval_recursive(spec, z, gate.children[1]);
    case catiso::GateKind::Or:
      for (std::size_t c : gate.children) {
        if (eval_recursive(spec, z, c)) return true;
      }
      return false;
  }
  return false;
}

// Weights of every proof tree rooted at g, one entry per tree.
inline std::vector<BigInt> proof_tree_weights(const CircuitSpec& spec, const catiso::Bits& z,
                                              const catiso::WeightAssignment& w, std::size_t g) {
  const auto& gate = spec.gates[g];
  std::vector<BigInt> out;
  switch (gate.kind) {
    case catiso::GateKind::Lit:
      if (literal_true(gate, z)) out.push_back(w[g]);
      break;
    case catiso::GateKind::And: {
      const auto left = proof_tree_weights(spec, z, w, gate.children[0]);
      const auto right = proof_tree_weights(spec, z, w, gate.children[1]);
      for (const auto& a : left) {
        for (const auto& b : right) out.push_back(w[g] + a + b);
      }
      break;
    }
    case catiso::GateKind::Or:
      for (std::size_t c : gate.children) {
        for (const auto& x : proof_tree_weights(spec, z, w, c)) out.push_back(w[g] + x);
      }
      break;
  }
  return out;
}

// ---- CNF ----

inline catiso::Cnf random_cnf(Rng& rng, unsigned vars, std::size_t clauses, std::size_t width) {
  catiso::Cnf cnf;
  cnf.vars = vars;
  for (std::size_t c = 0; c < clauses; ++c) {
    std::vector<int> clause;
    std::set<unsigned> used;
    const std::size_t len = uniform(rng, 1, std::min<std::size_t>(width, vars));
    while (clause.size() < len) {
      const unsigned v = static_cast<unsigned>(uniform(rng, 1, vars));
      if (!used.insert(v).second) continue;
      clause.push_back(coin(rng, 0.5) ? static_cast<int>(v) : -static_cast<int>(v));
    }
    cnf.clauses.push_back(clause);
  }
  return cnf;
}

inline bool cnf_holds(const catiso::Cnf& cnf, Mask y) {
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool x = ((y >> (std::abs(lit) - 1)) & 1U) != 0;
      if ((lit > 0) == x) sat = true;
    }
    if (!sat) return false;
  }
  return true;
}

// ---- graphs ----

inline catiso::Graph random_graph(Rng& rng, std::size_t n, double edge_p, bool colored) {
  catiso::Graph g;
  g.n = n;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng, edge_p)) {
        g.edges.emplace_back(u, v);
        if (colored) g.red.push_back(coin(rng, 0.5));
      }
    }
  }
  return g;
}

inline catiso::Digraph random_digraph(Rng& rng, std::size_t n, double arc_p) {
  catiso::Digraph g;
  g.n = n;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && coin(rng, arc_p)) g.arcs.emplace_back(u, v);
    }
  }
  return g;
}

// Perfect matching by degree counting: every vertex covered exactly once.
inline bool is_pm_naive(const catiso::Graph& g, Mask y) {
  std::vector<int> deg(g.n, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if ((y >> e) & 1U) {
      ++deg[g.edges[e].first];
      ++deg[g.edges[e].second];
    }
  }
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 1; });
}

// Arborescences via parent choice: pick one incoming arc per non-root
// vertex, keep the choices whose parent pointers all lead to the root.
// Returns the arc-index masks, ascending.
inline std::vector<Mask> arborescences_by_parents(const catiso::Digraph& g, std::size_t root) {
  std::vector<std::vector<std::size_t>> incoming(g.n);
  for (std::size_t e = 0; e < g.arcs.size(); ++e) incoming[g.arcs[e].second].push_back(e);
  std::vector<std::size_t> others;
  for (std::size_t v = 0; v < g.n; ++v) {
    if (v != root) others.push_back(v);
  }
  std::vector<Mask> out;
  std::vector<std::size_t> choice(others.size(), 0);
  for (std::size_t v : others) {
    if (incoming[v].empty()) return out;
  }
  while (true) {
    std::vector<std::size_t> parent(g.n, g.n);
    Mask mask = 0;
    for (std::size_t i = 0; i < others.size(); ++i) {
      const std::size_t e = incoming[others[i]][choice[i]];
      parent[others[i]] = g.arcs[e].first;
      mask |= Mask{1} << e;
    }
    bool ok = true;
    for (std::size_t v : others) {
      std::size_t x = v;
      for (std::size_t steps = 0; x != root && steps <= g.n; ++steps) x = parent[x];
      if (x != root) ok = false;
    }
    if (ok) out.push_back(mask);
    std::size_t i = 0;
    while (i < others.size()) {
      if (++choice[i] < incoming[others[i]].size()) break;
      choice[i] = 0;
      ++i;
    }
    if (i == others.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- witness minima ----

inline std::int64_t mask_weight(Mask y, const catiso::Weights& w) {
  std::int64_t total = 0;
  for (std::size_t e = 0; e < w.size(); ++e) {
    if ((y >> e) & 1U) total += w[e];
  }
  return total;
}

struct Argmin {
  std::optional<std::int64_t> weight;
  std::vector<Mask> masks;
};

inline Argmin brute_argmin(unsigned m, const std::function<bool(Mask)>& accepts, const catiso::Weights& w) {
  Argmin out;
  for (Mask y = 0; y < (Mask{1} << m); ++y) {
    if (!accepts(y)) continue;
    const auto x = mask_weight(y, w);
    if (!out.weight || x < *out.weight) {
      out.weight = x;
      out.masks = {y};
    } else if (x == *out.weight) {
      out.masks.push_back(y);
    }
  }
  return out;
}

}  // namespace testkit
