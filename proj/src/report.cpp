#include "catiso/report.hpp"

#include <algorithm>
#include <sstream>

#include "catiso/errors.hpp"

namespace catiso {

std::string to_string(EngineKind engine) {
  switch (engine) {
    case EngineKind::Coc:
      return "coc";
    case EngineKind::CircuitCoc:
      return "circuit-coc";
    case EngineKind::S2d:
      return "s2d";
    case EngineKind::Fsat:
      return "fsat";
  }
  return "?";
}

std::string to_string(PathTaken path) {
  switch (path) {
    case PathTaken::Isolated:
      return "isolated";
    case PathTaken::Fallback:
      return "fallback";
    case PathTaken::Reject:
      return "reject";
  }
  return "?";
}

EngineKind engine_from_string(const std::string& text) {
  for (auto e : {EngineKind::Coc, EngineKind::CircuitCoc, EngineKind::S2d, EngineKind::Fsat}) {
    if (to_string(e) == text) return e;
  }
  throw FormatError("unknown engine '" + text + "'");
}

PathTaken path_from_string(const std::string& text) {
  for (auto p : {PathTaken::Isolated, PathTaken::Fallback, PathTaken::Reject}) {
    if (to_string(p) == text) return p;
  }
  throw FormatError("unknown path '" + text + "'");
}

Summary aggregate(const std::vector<RunReport>& reports) {
  Summary s;
  s.runs = reports.size();
  if (reports.empty()) return s;
  s.min_freed_bits = reports.front().freed_bits;
  s.min_queries = reports.front().oracle_queries;
  double freed = 0;
  double queries = 0;
  double wall = 0;
  std::size_t isolated = 0;
  std::size_t fallback = 0;
  std::size_t reject = 0;
  for (const auto& r : reports) {
    s.passed += r.pass() ? 1 : 0;
    isolated += r.path == PathTaken::Isolated ? 1 : 0;
    fallback += r.path == PathTaken::Fallback ? 1 : 0;
    reject += r.path == PathTaken::Reject ? 1 : 0;
    freed += static_cast<double>(r.freed_bits);
    queries += static_cast<double>(r.oracle_queries);
    wall += r.wall_time_ms;
    s.min_freed_bits = std::min(s.min_freed_bits, r.freed_bits);
    s.max_freed_bits = std::max(s.max_freed_bits, r.freed_bits);
    s.min_queries = std::min(s.min_queries, r.oracle_queries);
    s.max_queries = std::max(s.max_queries, r.oracle_queries);
  }
  const auto n = static_cast<double>(reports.size());
  s.fraction_isolated = static_cast<double>(isolated) / n;
  s.fraction_fallback = static_cast<double>(fallback) / n;
  s.fraction_reject = static_cast<double>(reject) / n;
  s.mean_freed_bits = freed / n;
  s.mean_queries = queries / n;
  s.mean_wall_time_ms = wall / n;
  return s;
}

nlohmann::json to_json(const RunReport& r) {
  return {{"schema_version", kReportSchemaVersion},
          {"engine", to_string(r.engine)},
          {"path_taken", to_string(r.path)},
          {"freed_bits", r.freed_bits},
          {"oracle_queries", r.oracle_queries},
          {"round_queries", r.round_queries},
          {"tape_restored", r.tape_restored},
          {"wall_time_ms", r.wall_time_ms},
          {"seed", r.seed}};
}

RunReport report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) throw FormatError("unsupported report schema version");
    RunReport r;
    r.engine = engine_from_string(j.at("engine").get<std::string>());
    r.path = path_from_string(j.at("path_taken").get<std::string>());
    r.freed_bits = j.at("freed_bits").get<std::size_t>();
    r.oracle_queries = j.at("oracle_queries").get<std::uint64_t>();
    r.round_queries = j.at("round_queries").get<std::vector<std::uint64_t>>();
    r.tape_restored = j.at("tape_restored").get<bool>();
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed run report: ") + e.what());
  }
}

nlohmann::json to_json(const Summary& s) {
  return {{"schema_version", kReportSchemaVersion},
          {"runs", s.runs},
          {"passed", s.passed},
          {"fraction_isolated", s.fraction_isolated},
          {"fraction_fallback", s.fraction_fallback},
          {"fraction_reject", s.fraction_reject},
          {"mean_freed_bits", s.mean_freed_bits},
          {"min_freed_bits", s.min_freed_bits},
          {"max_freed_bits", s.max_freed_bits},
          {"mean_queries", s.mean_queries},
          {"min_queries", s.min_queries},
          {"max_queries", s.max_queries},
          {"mean_wall_time_ms", s.mean_wall_time_ms}};
}

std::string csv_header() { return "engine,path_taken,freed_bits,oracle_queries,round_queries,tape_restored,wall_time_ms,seed"; }

std::string to_csv_row(const RunReport& r) {
  std::ostringstream out;
  out << to_string(r.engine) << ',' << to_string(r.path) << ',' << r.freed_bits << ',' << r.oracle_queries << ',';
  for (std::size_t i = 0; i < r.round_queries.size(); ++i) out << (i ? ";" : "") << r.round_queries[i];
  out << ',' << (r.tape_restored ? "true" : "false") << ',' << r.wall_time_ms << ',' << r.seed;
  return out.str();
}

}  // namespace catiso
