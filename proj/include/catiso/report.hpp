#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace catiso {

inline constexpr int kReportSchemaVersion = 1;

enum class EngineKind { Coc, CircuitCoc, S2d, Fsat };
enum class PathTaken { Isolated, Fallback, Reject };

std::string to_string(EngineKind engine);
std::string to_string(PathTaken path);
EngineKind engine_from_string(const std::string& text);
PathTaken path_from_string(const std::string& text);

struct RunReport {
  EngineKind engine = EngineKind::Coc;
  PathTaken path = PathTaken::Isolated;
  std::size_t freed_bits = 0;
  std::uint64_t oracle_queries = 0;
  std::vector<std::uint64_t> round_queries;  // fsat only
  bool tape_restored = false;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;

  bool pass() const { return tape_restored; }
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

struct Summary {
  std::size_t runs = 0;
  std::size_t passed = 0;
  double fraction_isolated = 0.0;
  double fraction_fallback = 0.0;
  double fraction_reject = 0.0;
  double mean_freed_bits = 0.0;
  std::size_t min_freed_bits = 0;
  std::size_t max_freed_bits = 0;
  double mean_queries = 0.0;
  std::uint64_t min_queries = 0;
  std::uint64_t max_queries = 0;
  double mean_wall_time_ms = 0.0;
};

Summary aggregate(const std::vector<RunReport>& reports);

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Summary& summary);

std::string csv_header();
std::string to_csv_row(const RunReport& report);

}  // namespace catiso
