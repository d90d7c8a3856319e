#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "catiso/circuits.hpp"
#include "catiso/coc.hpp"
#include "catiso/errors.hpp"
#include "catiso/fsat.hpp"
#include "catiso/hashing.hpp"
#include "catiso/io.hpp"
#include "catiso/oracles.hpp"
#include "catiso/report.hpp"
#include "catiso/rng.hpp"
#include "catiso/s2d.hpp"

namespace catiso::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct CommonOptions {
  std::optional<std::uint64_t> seed;
  std::size_t trials = 1;
  unsigned jobs = 1;
  std::string out;
  std::string format = "json";
  bool timing = false;
  std::string fill = "random";
  std::string fill_file;
};

struct Trial {
  json detail;
  RunReport report;
};

std::uint64_t resolve_seed(const CommonOptions& common) {
  if (common.seed) return *common.seed;
  if (const char* env = std::getenv("CATISO_SEED")) {
    try {
      std::size_t used = 0;
      const std::string text(env);
      const auto value = std::stoull(text, &used, 0);
      if (used == text.size()) return value;
    } catch (const std::exception&) {
    }
    throw ConfigError("CATISO_SEED is not a 64-bit unsigned integer");
  }
  return 0;
}

// Trial k of a batch uses split(k); a single trial uses the seed itself.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trials, std::size_t k) {
  return trials == 1 ? seed : SplitMix64(seed).split(k);
}

std::vector<Trial> run_trials(std::size_t trials, unsigned jobs, const std::function<Trial(std::size_t)>& body) {
  std::vector<Trial> results(trials);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, jobs), trials));
  if (workers <= 1) {
    for (std::size_t k = 0; k < trials; ++k) results[k] = body(k);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < trials; k = next++) {
        try {
          results[k] = body(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

TapeFill fill_for(const CommonOptions& common, std::uint64_t seed) {
  if (!common.fill_file.empty()) return TapeFill::explicit_bits(load_fill_file(common.fill_file));
  if (common.fill == "random") return TapeFill::random(seed);
  if (common.fill == "zeros") return TapeFill::zeros();
  throw ConfigError("unsupported fill '" + common.fill + "'");
}

std::string path_letter(EnginePath path) { return path == EnginePath::A ? "A" : "B"; }

json hashes_json(const std::vector<HashSeed>& hashes) {
  json out = json::array();
  for (const auto& h : hashes) out.push_back({h.a, h.b});
  return out;
}

std::string big_string(const BigInt& v) { return v.str(); }

void write_output(const CommonOptions& common, const std::string& command, const std::string& text,
                  std::ostream& out) {
  std::filesystem::path target = common.out;
  const char* dir = std::getenv("CATISO_OUT_DIR");
  if (target.empty() && dir != nullptr && *dir != '\0') {
    target = std::filesystem::path(dir) / (command + (common.format == "csv" ? ".csv" : ".json"));
  } else if (!target.empty() && target.is_relative() && dir != nullptr && *dir != '\0') {
    target = std::filesystem::path(dir) / target;
  }
  if (target.empty()) {
    out << text;
    return;
  }
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream file(target, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + target.string());
  file << text;
}

// Emits one trial as its detail object, or a batch with a summary; CSV
// carries one RunReport row per trial.
void emit(const CommonOptions& common, const std::string& command, std::uint64_t seed, std::vector<Trial>& trials,
          std::ostream& out) {
  if (!common.timing) {
    for (auto& t : trials) t.report.wall_time_ms = 0.0;
  }
  std::string text;
  if (common.format == "csv") {
    text = csv_header() + "\n";
    for (const auto& t : trials) text += to_csv_row(t.report) + "\n";
  } else {
    json doc;
    if (trials.size() == 1) {
      doc = trials.front().detail;
      doc["report"] = to_json(trials.front().report);
    } else {
      std::vector<RunReport> reports;
      json rows = json::array();
      for (const auto& t : trials) {
        json row = t.detail;
        row["report"] = to_json(t.report);
        rows.push_back(row);
        reports.push_back(t.report);
      }
      doc = {{"schema_version", kReportSchemaVersion},
             {"engine", command},
             {"seed", seed},
             {"trials", rows},
             {"summary", to_json(aggregate(reports))}};
    }
    if (!common.timing) {
      doc.erase("wall_time_ms");
    }
    text = doc.dump(2) + "\n";
  }
  write_output(common, command, text, out);
}

bool all_restored(const std::vector<Trial>& trials) {
  return std::all_of(trials.begin(), trials.end(), [](const Trial& t) { return t.report.tape_restored; });
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void add_common(CLI::App* sub, CommonOptions& common, bool fills = true) {
  sub->add_option("--seed,--tape-seed", common.seed, "64-bit seed (default: CATISO_SEED or 0)");
  sub->add_option("--trials", common.trials, "Independent trials, seeded by split(k)")->check(CLI::PositiveNumber);
  sub->add_option("--jobs", common.jobs, "Worker threads for trials")->check(CLI::PositiveNumber);
  sub->add_option("--out", common.out, "Output file (relative paths resolve under CATISO_OUT_DIR)");
  sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--timing", common.timing, "Include wall-clock times (breaks byte-identical output)");
  if (fills) {
    sub->add_option("--fill", common.fill, "Tape fill")->check(CLI::IsMember({"random", "zeros", "adversarial"}));
    sub->add_option("--fill-file", common.fill_file, "Explicit tape contents (hex or binary)");
  }
}

// ---- hash-audit ----

struct HashAuditOptions {
  std::uint64_t m = 16;
  std::uint64_t r = 64;
  bool exhaustive = false;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::string format_probability(double p) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.10g", p);
  return buffer;
}

int cmd_hash_audit(const HashAuditOptions& opt, std::ostream& out) {
  const HashFamilyParams params = family_params(opt.m, opt.r);
  if (opt.r > 4096) throw LimitError("hash-audit supports r <= 4096");
  if (opt.exhaustive && opt.samples) throw ConfigError("--exhaustive and --samples are exclusive");
  const auto r = static_cast<std::int64_t>(opt.r);
  std::ostringstream text;
  text << "u,v,delta,probability\n";
  auto emit_rows = [&](std::uint64_t u, std::uint64_t v, const std::vector<std::uint64_t>& hist, double total) {
    for (std::int64_t delta = -r; delta <= r; ++delta) {
      // h(u) = delta + h(v)  <=>  h(u) - h(v) = delta
      const std::int64_t index = delta + (r - 1);
      const std::uint64_t hits =
          index >= 0 && index < static_cast<std::int64_t>(hist.size()) ? hist[static_cast<std::size_t>(index)] : 0;
      text << u << ',' << v << ',' << delta << ',' << format_probability(static_cast<double>(hits) / total) << '\n';
    }
  };
  if (!opt.samples) {
    const double total = static_cast<double>(params.p - 1) * static_cast<double>(params.p);
    for (std::uint64_t u = 0; u < opt.m; ++u) {
      for (std::uint64_t v = 0; v < opt.m; ++v) {
        if (u != v) emit_rows(u, v, difference_histogram(params, u, v), total);
      }
    }
  } else {
    if (*opt.samples == 0) throw ConfigError("--samples must be positive");
    if (opt.m > 4096) throw LimitError("sampled hash-audit supports m <= 4096");
    auto engine = make_engine(opt.seed.value_or(0));
    std::uniform_int_distribution<std::uint64_t> pick_a(1, params.p - 1);
    std::uniform_int_distribution<std::uint64_t> pick_b(0, params.p - 1);
    const std::size_t width = 2 * opt.r - 1;
    std::vector<std::vector<std::uint64_t>> hist(opt.m * opt.m, std::vector<std::uint64_t>(width, 0));
    std::vector<std::uint64_t> h(opt.m);
    for (std::uint64_t s = 0; s < *opt.samples; ++s) {
      const HashSeed seed{pick_a(engine), pick_b(engine)};
      for (std::uint64_t x = 0; x < opt.m; ++x) h[x] = eval(params, seed, x);
      for (std::uint64_t u = 0; u < opt.m; ++u) {
        for (std::uint64_t v = 0; v < opt.m; ++v) {
          if (u != v) ++hist[u * opt.m + v][static_cast<std::size_t>(h[u] + opt.r - 1 - h[v])];
        }
      }
    }
    for (std::uint64_t u = 0; u < opt.m; ++u) {
      for (std::uint64_t v = 0; v < opt.m; ++v) {
        if (u != v) emit_rows(u, v, hist[u * opt.m + v], static_cast<double>(*opt.samples));
      }
    }
  }
  CommonOptions common;
  common.out = opt.out;
  common.format = "csv";
  write_output(common, "hash-audit", text.str(), out);
  return 0;
}

// ---- coc / circuit-coc ----

struct CocOptions {
  std::string graph;
  std::string circuit;
  std::string assignment;
  double alpha = 0.0;
  std::size_t s = 0;
  std::optional<std::size_t> t;
  std::optional<std::uint64_t> r_override;
  std::uint64_t enum_cap = std::uint64_t{1} << 22;
};

PathTaken path_taken(EnginePath path) { return path == EnginePath::A ? PathTaken::Isolated : PathTaken::Fallback; }

json engine_json(const EngineReport& e) {
  return {{"path", path_letter(e.path)},
          {"good_hashes", hashes_json(e.hashes)},
          {"compressed_blocks", e.compressed_blocks},
          {"freed_bits", e.freed_bits},
          {"goodness_queries", e.goodness_queries},
          {"tape_restored", e.tape_restored}};
}

TapeFill engine_fill(const CommonOptions& common, std::uint64_t seed, CompressOrComputeEngine& engine) {
  if (common.fill == "adversarial" && common.fill_file.empty()) return adversarial_fill(engine);
  return fill_for(common, seed);
}

int cmd_coc(const CocOptions& opt, const CommonOptions& common, std::ostream& out) {
  const LayeredDag g = load_graph(opt.graph);
  if (!opt.t) throw ConfigError("--t is required");
  CocConfig config;
  config.alpha = opt.alpha;
  config.r = opt.r_override;
  config.enum_cap = opt.enum_cap;
  const CocPlan plan = plan_coc(g, config);
  const std::uint64_t seed = resolve_seed(common);
  auto trials = run_trials(common.trials, common.jobs, [&](std::size_t k) {
    const std::uint64_t ts = trial_seed(seed, common.trials, k);
    const auto start = Clock::now();
    CompressOrComputeEngine probe(plan.layout, dag_goodness(g, plan));
    CatalyticTape tape = probe.make_tape(engine_fill(common, ts, probe));
    const CocReport rep = compress_or_compute(g, opt.s, *opt.t, tape, plan);
    Trial trial;
    trial.detail = engine_json(rep.engine);
    trial.detail["verdict"] = rep.verdict ? "reachable" : "unreachable";
    trial.detail["distance"] = rep.distance ? json(big_string(*rep.distance)) : json(nullptr);
    trial.detail["seed"] = ts;
    trial.detail["delta"] = plan.schedule.delta;
    trial.detail["r"] = plan.family.r;
    trial.report = {EngineKind::Coc, path_taken(rep.engine.path), rep.engine.freed_bits, rep.engine.goodness_queries,
                    {}, rep.engine.tape_restored, elapsed_ms(start), ts};
    return trial;
  });
  emit(common, "coc", seed, trials, out);
  if (!all_restored(trials)) throw CorruptionError("catalytic tape not restored");
  return 0;
}

Bits parse_assignment(const std::string& text, std::size_t vars) {
  Bits z = text.empty() ? Bits(vars, false) : parse_bits(text);
  if (z.size() < vars) throw ConfigError("assignment has " + std::to_string(z.size()) + " bits, circuit uses " +
                                         std::to_string(vars) + " variables");
  return z;
}

int cmd_circuit_coc(const CocOptions& opt, const CommonOptions& common, std::ostream& out) {
  const LayeredCircuit c = load_circuit(opt.circuit);
  const Bits z = parse_assignment(opt.assignment, c.variables());
  CocConfig config;
  config.alpha = opt.alpha;
  config.r = opt.r_override;
  config.enum_cap = opt.enum_cap;
  const CocPlan plan = plan_circuit_coc(c, config);
  const std::uint64_t seed = resolve_seed(common);
  auto trials = run_trials(common.trials, common.jobs, [&](std::size_t k) {
    const std::uint64_t ts = trial_seed(seed, common.trials, k);
    const auto start = Clock::now();
    CompressOrComputeEngine probe(plan.layout, circuit_goodness(c, z, plan));
    CatalyticTape tape = probe.make_tape(engine_fill(common, ts, probe));
    const CircuitCocReport rep = circuit_compress_or_compute(c, z, tape, plan);
    Trial trial;
    trial.detail = engine_json(rep.engine);
    trial.detail["verdict"] = rep.verdict ? "accept" : "reject";
    trial.detail["min_weight"] = rep.min_weight ? json(big_string(*rep.min_weight)) : json(nullptr);
    trial.detail["seed"] = ts;
    trial.detail["delta"] = plan.schedule.delta;
    trial.detail["r"] = plan.family.r;
    trial.report = {EngineKind::CircuitCoc, path_taken(rep.engine.path), rep.engine.freed_bits,
                    rep.engine.goodness_queries, {}, rep.engine.tape_restored, elapsed_ms(start), ts};
    return trial;
  });
  emit(common, "circuit-coc", seed, trials, out);
  if (!all_restored(trials)) throw CorruptionError("catalytic tape not restored");
  return 0;
}

// ---- s2d ----

struct S2dCliOptions {
  std::string relation;
  std::string instance;
  std::optional<unsigned> m;
  unsigned k = 0;
  std::string weights;
  std::optional<std::size_t> n_weights;
  std::string oracle = "brute";
};

Weights parse_weight_list(const std::string& text) {
  Weights w;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw FormatError("");
      w.push_back(v);
    } catch (const std::exception&) {
      throw FormatError("--weights must be a comma-separated list of non-negative integers");
    }
  }
  return w;
}

struct RelationBundle {
  Relation relation;
  std::optional<Digraph> digraph;
  std::size_t root = 0;
};

RelationBundle build_relation(const S2dCliOptions& opt) {
  const std::string& name = opt.relation;
  if (name == "k-subset") {
    if (!opt.m) throw ConfigError("k-subset needs --m");
    if (opt.k > *opt.m) throw ConfigError("--k exceeds --m");
    return {k_subset_relation(*opt.m, opt.k), std::nullopt, 0};
  }
  if (opt.instance.empty()) throw ConfigError("relation '" + name + "' needs --instance");
  if (name == "sat") return {sat_relation(load_dimacs(opt.instance)), std::nullopt, 0};
  const json doc = parse_json(read_text_file(opt.instance));
  if (name == "pm") return {matching_relation(undirected_from_json(doc)), std::nullopt, 0};
  if (name == "exact-pm") {
    const Graph g = undirected_from_json(doc);
    if (g.red.empty()) throw FormatError("exact-pm instance needs edge colors");
    return {exact_matching_relation(g, opt.k), std::nullopt, 0};
  }
  if (name == "arborescence") {
    const Digraph g = digraph_from_json(doc);
    const std::size_t root = root_from_json(doc).value_or(0);
    return {arborescence_relation(g, root), g, root};
  }
  throw ConfigError("unknown relation '" + name + "'");
}

std::unique_ptr<WeightedDecisionOracle> build_oracle(const S2dCliOptions& opt, const RelationBundle& bundle) {
  if (opt.oracle == "brute") return brute_force_oracle(bundle.relation);
  if (!bundle.digraph) throw ConfigError("--oracle count is only available for arborescence");
  const Digraph g = *bundle.digraph;
  const std::size_t root = bundle.root;
  return counting_oracle_to_decision(bundle.relation.m, [g, root](const Weights& w) {
    return matrix_tree_count(g, w, root, DetMethod::Bareiss);
  });
}

json optional_size(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

PathTaken path_taken(S2dPath path) {
  switch (path) {
    case S2dPath::Isolated:
      return PathTaken::Isolated;
    case S2dPath::Fallback:
      return PathTaken::Fallback;
    case S2dPath::Reject:
      break;
  }
  return PathTaken::Reject;
}

int cmd_s2d(const S2dCliOptions& opt, const CommonOptions& common, std::ostream& out) {
  if (common.fill == "adversarial") throw ConfigError("s2d supports --fill random or zeros");
  const RelationBundle bundle = build_relation(opt);
  const unsigned m = bundle.relation.m;
  if (opt.m && *opt.m != m) throw ConfigError("--m does not match the instance");
  S2dOptions options;
  if (!opt.weights.empty()) {
    options.input_weights = parse_weight_list(opt.weights);
    if (options.input_weights->size() != m) {
      throw ConfigError("--weights has " + std::to_string(options.input_weights->size()) + " entries, m is " +
                        std::to_string(m));
    }
  }
  const WeightTapeLayout layout = weight_tape_layout(m, opt.n_weights.value_or(default_weight_count(m)));
  const std::uint64_t seed = resolve_seed(common);
  auto trials = run_trials(common.trials, common.jobs, [&](std::size_t k) {
    const std::uint64_t ts = trial_seed(seed, common.trials, k);
    const auto start = Clock::now();
    auto oracle = build_oracle(opt, bundle);
    CatalyticTape tape = make_weight_tape(layout, fill_for(common, ts));
    const S2dResult res = search_to_decision(bundle.relation, *oracle, tape, layout, options);
    Trial trial;
    json& d = trial.detail;
    d["relation"] = bundle.relation.name;
    d["m"] = m;
    d["witness"] = res.witness ? json(format_witness(*res.witness, m)) : json(nullptr);
    if (!res.witness) {
      d["wmin"] = nullptr;
    } else if (options.input_weights) {
      d["wmin"] = weight_of(*res.witness, *options.input_weights);
    } else {
      d["wmin"] = res.wmin;
    }
    if (res.path == S2dPath::Fallback) {
      d["isolating_index"] = "fallback";
    } else {
      d["isolating_index"] = optional_size(res.isolating_index);
    }
    d["path"] = to_string(res.path);
    d["compressed"] = res.compressed;
    d["freed_bits"] = res.freed_bits;
    d["queries_total"] = res.queries_total;
    d["tape_restored"] = res.tape_restored;
    d["seed"] = ts;
    trial.report = {EngineKind::S2d,    path_taken(res.path), res.freed_bits,   res.queries_total,
                    {},                 res.tape_restored,    elapsed_ms(start), ts};
    return trial;
  });
  emit(common, "s2d", seed, trials, out);
  if (!all_restored(trials)) throw CorruptionError("catalytic tape not restored");
  return 0;
}

// ---- fsat ----

struct FsatCliOptions {
  std::string cnf;
  std::optional<std::size_t> n_weights;
};

int cmd_fsat(const FsatCliOptions& opt, const CommonOptions& common, std::ostream& out) {
  if (common.fill == "adversarial") throw ConfigError("fsat supports --fill random or zeros");
  const Cnf phi = load_dimacs(opt.cnf);
  if (phi.vars == 0) throw ConfigError("formula has no variables");
  const WeightTapeLayout layout = weight_tape_layout(phi.vars, opt.n_weights.value_or(default_weight_count(phi.vars)));
  const std::uint64_t seed = resolve_seed(common);
  auto trials = run_trials(common.trials, common.jobs, [&](std::size_t k) {
    const std::uint64_t ts = trial_seed(seed, common.trials, k);
    const auto start = Clock::now();
    BruteForceFsatOracle oracle;
    CatalyticTape tape = make_weight_tape(layout, fill_for(common, ts));
    const FsatResult res = run_fsat(phi, tape, layout, oracle);
    Trial trial;
    json& d = trial.detail;
    d["assignment"] = res.assignment ? json(format_witness(*res.assignment, phi.vars)) : json(nullptr);
    d["satisfiable"] = res.assignment.has_value();
    d["path"] = to_string(res.path);
    d["isolating_block"] = optional_size(res.isolating_block);
    d["compressed"] = res.compressed;
    d["freed_bits"] = res.freed_bits;
    d["isolated_model_count"] = res.isolated.model_count();
    json rounds = json::array();
    std::vector<std::uint64_t> per_round;
    for (std::size_t r = 0; r < res.rounds.size(); ++r) {
      rounds.push_back({{"round", res.rounds[r].round}, {"queries", res.round_queries(r)}});
      per_round.push_back(res.round_queries(r));
    }
    d["rounds"] = rounds;
    json log = json::array();
    for (const auto& e : res.log()) {
      log.push_back({{"round", e.round},
                     {"kind", to_string(e.query.kind)},
                     {"block", e.query.block},
                     {"var", e.query.var},
                     {"target", e.query.target},
                     {"answer", e.answer}});
    }
    d["log"] = log;
    d["tape_restored"] = res.tape_restored;
    d["seed"] = ts;
    std::uint64_t total = 0;
    for (auto q : per_round) total += q;
    trial.report = {EngineKind::Fsat,  path_taken(res.path), res.freed_bits,    total,
                    per_round,         res.tape_restored,    elapsed_ms(start), ts};
    return trial;
  });
  emit(common, "fsat", seed, trials, out);
  if (!all_restored(trials)) throw CorruptionError("catalytic tape not restored");
  return 0;
}

// ---- oracle-check ----

struct OracleCheckOptions {
  std::string instance;
  std::size_t weightings = 200;
  std::int64_t max_weight = 4;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_oracle_check(const OracleCheckOptions& opt, std::ostream& out) {
  const json doc = parse_json(read_text_file(opt.instance));
  const Digraph g = digraph_from_json(doc);
  const std::size_t root = root_from_json(doc).value_or(0);
  if (g.arcs.size() > 24) throw LimitError("oracle-check enumerates arc subsets; at most 24 arcs");
  if (opt.max_weight < 0) throw ConfigError("--max-weight must be non-negative");
  const Relation relation = arborescence_relation(g, root);
  const auto witnesses = enumerate_witnesses(relation);
  CommonOptions seeded;
  seeded.seed = opt.seed;
  auto engine = make_engine(resolve_seed(seeded));
  std::uniform_int_distribution<std::int64_t> pick(0, opt.max_weight);
  std::size_t coefficient_mismatches = 0;
  std::size_t method_mismatches = 0;
  std::size_t decision_mismatches = 0;
  for (std::size_t trial = 0; trial < opt.weightings; ++trial) {
    Weights w(g.arcs.size());
    for (auto& x : w) x = pick(engine);
    const Polynomial interp = matrix_tree_count(g, w, root, DetMethod::Interpolation);
    const Polynomial bareiss = matrix_tree_count(g, w, root, DetMethod::Bareiss);
    if (!(interp == bareiss)) ++method_mismatches;
    std::map<std::uint64_t, BigInt> counted;
    for (Mask y : witnesses) counted[static_cast<std::uint64_t>(weight_of(y, w))] += 1;
    Polynomial expected;
    for (const auto& [deg, count] : counted) expected = expected + Polynomial::monomial(deg, count);
    if (!(expected == interp)) ++coefficient_mismatches;
    BruteForceOracle brute(relation);
    auto counting = counting_oracle_to_decision(relation.m, [&](const Weights& ww) {
      return matrix_tree_count(g, ww, root, DetMethod::Bareiss);
    });
    const std::int64_t top = weight_of(~Mask{0} >> (64 - relation.m), w) + 1;
    for (std::int64_t w0 = -1; w0 <= top; ++w0) {
      if (brute.query(w, w0) != counting->query(w, w0)) ++decision_mismatches;
    }
  }
  json doc_out = {{"n", g.n},
                  {"arcs", g.arcs.size()},
                  {"root", root},
                  {"arborescences", witnesses.size()},
                  {"weightings", opt.weightings},
                  {"coefficient_mismatches", coefficient_mismatches},
                  {"method_mismatches", method_mismatches},
                  {"decision_mismatches", decision_mismatches}};
  CommonOptions common;
  common.out = opt.out;
  write_output(common, "oracle-check", doc_out.dump(2) + "\n", out);
  if (coefficient_mismatches + method_mismatches + decision_mismatches != 0) {
    throw CorruptionError("counting and brute-force oracles disagree");
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Catalytic isolation experiments", "catiso"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "catiso 0.1.0");

  HashAuditOptions audit;
  auto* hash_audit = app.add_subcommand("hash-audit", "Shifted-collision audit of the affine hash family (CSV)");
  hash_audit->add_option("--m", audit.m, "Domain size")->check(CLI::PositiveNumber);
  hash_audit->add_option("--r", audit.r, "Range size")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{4096}));
  auto* exhaustive = hash_audit->add_flag("--exhaustive", audit.exhaustive, "Every seed (default)");
  hash_audit->add_option("--samples", audit.samples, "Sampled seeds instead of all")->excludes(exhaustive);
  hash_audit->add_option("--seed", audit.seed, "Sampling seed");
  hash_audit->add_option("--out", audit.out, "Output file");

  CommonOptions coc_common;
  CocOptions coc_opt;
  auto* coc = app.add_subcommand("coc", "Compress-or-compute reachability on a layered DAG");
  coc->add_option("--graph", coc_opt.graph, "Graph file (JSON or text)")->required()->check(CLI::ExistingFile);
  coc->add_option("--alpha", coc_opt.alpha, "Hash reuse exponent in [0, 0.5]");
  coc->add_option("--s", coc_opt.s, "Source vertex");
  coc->add_option("--t", coc_opt.t, "Target vertex")->required();
  coc->add_option("--r-override", coc_opt.r_override, "Hash range (default n^6)");
  coc->add_option("--enum-cap", coc_opt.enum_cap, "Maximum seed space for enumeration");
  add_common(coc, coc_common);

  CommonOptions circ_common;
  CocOptions circ_opt;
  auto* circ = app.add_subcommand("circuit-coc", "Compress-or-compute evaluation of a layered circuit");
  circ->add_option("--circuit", circ_opt.circuit, "Circuit JSON")->required()->check(CLI::ExistingFile);
  circ->add_option("--assignment", circ_opt.assignment, "Input bits, variable 1 first (default all zero)");
  circ->add_option("--alpha", circ_opt.alpha, "Hash reuse exponent in [0, 0.5]");
  circ->add_option("--r-override", circ_opt.r_override, "Hash range (default #gates^6)");
  circ->add_option("--enum-cap", circ_opt.enum_cap, "Maximum seed space for enumeration");
  add_common(circ, circ_common);

  CommonOptions s2d_common;
  S2dCliOptions s2d_opt;
  auto* s2d = app.add_subcommand("s2d", "Search-to-decision witness extraction");
  s2d->add_option("--relation", s2d_opt.relation, "Witness relation")
      ->required()
      ->check(CLI::IsMember({"sat", "pm", "exact-pm", "arborescence", "k-subset"}));
  s2d->add_option("--instance", s2d_opt.instance, "Instance file (DIMACS or graph JSON)")->check(CLI::ExistingFile);
  s2d->add_option("--m", s2d_opt.m, "Witness length (k-subset)");
  s2d->add_option("--k", s2d_opt.k, "Subset size (k-subset) or red-edge count (exact-pm)");
  s2d->add_option("--weights", s2d_opt.weights, "Input weights, comma-separated");
  s2d->add_option("--n-weights", s2d_opt.n_weights, "Weight assignments on the tape (default m+8)")
      ->check(CLI::PositiveNumber);
  s2d->add_option("--oracle", s2d_opt.oracle, "Decision oracle")->check(CLI::IsMember({"brute", "count"}));
  add_common(s2d, s2d_common);

  CommonOptions fsat_common;
  FsatCliOptions fsat_opt;
  auto* fsat = app.add_subcommand("fsat", "Two-round FSAT with a round-tagged query log");
  fsat->add_option("--cnf", fsat_opt.cnf, "DIMACS CNF")->required()->check(CLI::ExistingFile);
  fsat->add_option("--n-weights", fsat_opt.n_weights, "Weight assignments on the tape (default n+8)")
      ->check(CLI::PositiveNumber);
  add_common(fsat, fsat_common);

  OracleCheckOptions check_opt;
  auto* check = app.add_subcommand("oracle-check", "Matrix-tree counting vs brute-force arborescences");
  check->add_option("--instance", check_opt.instance, "Digraph JSON with optional root")
      ->required()
      ->check(CLI::ExistingFile);
  check->add_option("--weightings", check_opt.weightings, "Random weightings");
  check->add_option("--max-weight", check_opt.max_weight, "Arc weights drawn from [0, max]");
  check->add_option("--seed", check_opt.seed, "Weighting seed (default: CATISO_SEED or 0)");
  check->add_option("--out", check_opt.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*hash_audit) return cmd_hash_audit(audit, out);
    if (*coc) {
      if (coc_common.fill == "adversarial" && !coc_common.fill_file.empty()) {
        throw ConfigError("--fill adversarial and --fill-file are exclusive");
      }
      return cmd_coc(coc_opt, coc_common, out);
    }
    if (*circ) return cmd_circuit_coc(circ_opt, circ_common, out);
    if (*s2d) return cmd_s2d(s2d_opt, s2d_common, out);
    if (*fsat) return cmd_fsat(fsat_opt, fsat_common, out);
    if (*check) return cmd_oracle_check(check_opt, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CorruptionError& e) {
    err << "corruption: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace catiso::cli
