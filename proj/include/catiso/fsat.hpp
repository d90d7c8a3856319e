#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catiso/cnf.hpp"
#include "catiso/s2d.hpp"

namespace catiso {

// Exact-weight NP queries "exists S satisfying psi with W(S) = target",
// psi = phi, phi & x_j, or phi & !x_j.
enum class FsatQueryKind : std::uint8_t {
  Any = 1,        // q1: phi, W_i
  FixOne = 2,     // q2: phi & x_j = 1, W_i
  FixZero = 3,    // q3: phi & x_j = 0, W_i
  RebuildOne = 4, // q4: phi & x_j = 1, W_i with W_i(j) = 0
  RebuildZero = 5 // q5: phi & x_j = 0, W_i with W_i(j) = 0
};

struct FsatQuery {
  FsatQueryKind kind = FsatQueryKind::Any;
  std::uint32_t block = 0;  // index into the round's weight table
  std::uint32_t var = 0;    // 1-based; 0 for q1
  std::int64_t target = 0;

  friend bool operator==(const FsatQuery&, const FsatQuery&) = default;
};

// One nonadaptive batch: every query is fixed before any answer is seen.
struct QueryRound {
  int round = 0;
  std::vector<Weights> weights;
  std::vector<FsatQuery> queries;
};

class FsatOracle {
 public:
  virtual ~FsatOracle() = default;
  virtual std::vector<bool> answer_round(const Cnf& phi, const QueryRound& round) = 0;
};

// Brute force over all assignments; reachable weights cached per weight table entry.
class BruteForceFsatOracle : public FsatOracle {
 public:
  std::vector<bool> answer_round(const Cnf& phi, const QueryRound& round) override;

 private:
  struct Reachable {
    std::vector<bool> any;
    std::vector<std::vector<bool>> one;   // per variable
    std::vector<std::vector<bool>> zero;  // per variable
  };
  const Reachable& reachable(const Cnf& phi, const Weights& w);

  std::optional<Cnf> cached_phi_;
  std::vector<Mask> models_;
  std::map<Weights, Reachable> cache_;
};

// Answers round 1 from a recording, later rounds from `live`.
class ReplayFsatOracle : public FsatOracle {
 public:
  ReplayFsatOracle(QueryRound recorded_round1, std::vector<bool> recorded_answers, FsatOracle& live);
  std::vector<bool> answer_round(const Cnf& phi, const QueryRound& round) override;

 private:
  QueryRound recorded_;
  std::vector<bool> answers_;
  FsatOracle& live_;
};

// phi plus at most one extra constraint family.
struct IsolatedFormula {
  Cnf base;
  bool contradiction = false;
  std::optional<std::pair<Weights, std::int64_t>> weight_equality;
  std::vector<int> units;

  bool satisfied(Mask assignment) const;
  std::uint64_t model_count() const;
};

struct FsatLogEntry {
  int round = 0;
  FsatQuery query;
  bool answer = false;
};

struct FsatResult {
  std::optional<Mask> assignment;
  IsolatedFormula isolated;
  S2dPath path = S2dPath::Reject;
  std::optional<std::size_t> isolating_block;
  std::vector<std::size_t> compressed;
  std::size_t freed_bits = 0;
  std::vector<QueryRound> rounds;  // always two
  std::vector<std::vector<bool>> answers;
  bool tape_restored = false;

  std::size_t round_queries(std::size_t r) const { return rounds.at(r).queries.size(); }
  std::vector<FsatLogEntry> log() const;
};

FsatResult run_fsat(const Cnf& phi, CatalyticTape& tape, const WeightTapeLayout& layout, FsatOracle& oracle);

// Projections of run_fsat: the assignment (nullopt when unsatisfiable) and phi & phi'.
std::optional<Mask> fsat(const Cnf& phi, CatalyticTape& tape, const WeightTapeLayout& layout, FsatOracle& oracle);
IsolatedFormula isolate_formula(const Cnf& phi, CatalyticTape& tape, const WeightTapeLayout& layout,
                                FsatOracle& oracle);

std::string to_string(FsatQueryKind kind);

}  // namespace catiso
