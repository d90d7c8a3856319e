#include <doctest.h>

#include "catiso/errors.hpp"
#include "catiso/io.hpp"
#include "catiso/report.hpp"

using namespace catiso;

namespace {

RunReport sample(PathTaken path, std::size_t freed, std::uint64_t queries, bool restored = true) {
  RunReport r;
  r.engine = EngineKind::S2d;
  r.path = path;
  r.freed_bits = freed;
  r.oracle_queries = queries;
  r.tape_restored = restored;
  r.seed = 42;
  return r;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("single report is echoed") {
    const auto s = aggregate({sample(PathTaken::Fallback, 12, 7)});
    CHECK(s.runs == 1);
    CHECK(s.passed == 1);
    CHECK(s.fraction_fallback == 1.0);
    CHECK(s.mean_freed_bits == 12.0);
    CHECK(s.min_freed_bits == 12);
    CHECK(s.max_queries == 7);
  }

  TEST_CASE("means and fractions over fixed reports") {
    const auto s = aggregate({sample(PathTaken::Isolated, 0, 10), sample(PathTaken::Fallback, 30, 20),
                              sample(PathTaken::Reject, 60, 30, false)});
    CHECK(s.mean_freed_bits == doctest::Approx(30.0));
    CHECK(s.mean_queries == doctest::Approx(20.0));
    CHECK(s.passed == 2);
    CHECK(s.fraction_isolated + s.fraction_fallback + s.fraction_reject == doctest::Approx(1.0));
    for (double f : {s.fraction_isolated, s.fraction_fallback, s.fraction_reject}) {
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
    }
    CHECK(s.min_freed_bits == 0);
    CHECK(s.max_freed_bits == 60);
  }

  TEST_CASE("empty input gives an empty summary") {
    const auto s = aggregate({});
    CHECK(s.runs == 0);
    CHECK(s.mean_freed_bits == 0.0);
    CHECK(to_json(s)["runs"] == 0);
  }

  TEST_CASE("json round trip and field names") {
    auto r = sample(PathTaken::Isolated, 3, 9);
    r.engine = EngineKind::Fsat;
    r.round_queries = {5, 4};
    const auto j = to_json(r);
    for (const char* key : {"schema_version", "engine", "path_taken", "freed_bits", "oracle_queries", "tape_restored",
                            "wall_time_ms", "seed"}) {
      CHECK(j.contains(key));
    }
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(report_from_json(j) == r);
    CHECK_THROWS(engine_from_string("nope"));
    CHECK_THROWS(path_from_string("nope"));
  }

  TEST_CASE("csv rows match the header width") {
    const auto header = csv_header();
    const auto row = to_csv_row(sample(PathTaken::Reject, 1, 2));
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
  }
}

TEST_SUITE("io") {
  TEST_CASE("graph json and text agree") {
    const auto a = graph_from_json(parse_json(R"({"n":3,"layers":[[0],[1],[2]],"edges":[[0,1],[1,2]]})"));
    const auto b = graph_from_text("# path\nL 0 0\nL 1 1\nL 2 2\nE 0 1\nE 1 2\n");
    CHECK(a.n() == 3);
    CHECK(a.edges() == b.edges());
    CHECK(a.layers() == b.layers());
    const auto c = graph_from_json(graph_to_json(a));
    CHECK(c.edges() == a.edges());
    CHECK(c.layers() == a.layers());
    CHECK(load_graph(CATISO_TEST_DATA "/path3.json").reachable(0, 2));
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse_json("{\"n\": "), FormatError);
    CHECK_THROWS_AS(graph_from_json(parse_json(R"({"layers":[[0]],"edges":"x"})")), FormatError);
    CHECK_THROWS_AS(graph_from_text("Q 1 2\n"), FormatError);
    CHECK_THROWS_AS(read_text_file("/nonexistent/file.json"), ConfigError);
    CHECK_THROWS_AS(circuit_from_json(parse_json(R"({"layers":[[{"gate":0,"kind":"xor"}]],"output":0})")),
                    FormatError);
  }

  TEST_CASE("circuit json round trip") {
    const auto c = load_circuit(CATISO_TEST_DATA "/and_or.json");
    CHECK(c.size() == 6);
    CHECK(c.output() == 5);
    const auto d = circuit_from_json(circuit_to_json(c));
    CHECK(circuit_to_json(d) == circuit_to_json(c));
    CHECK(eval_circuit(c, {true, true})[5]);
    CHECK_FALSE(eval_circuit(c, {true, false})[5]);
  }

  TEST_CASE("oracle instances") {
    const auto j = parse_json(R"({"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]],"colors":["red","blue",true,false]})");
    const auto g = undirected_from_json(j);
    CHECK(g.red == std::vector<bool>{true, false, true, false});
    const auto d = digraph_from_json(parse_json(read_text_file(CATISO_TEST_DATA "/arb4.json")));
    CHECK(d.arcs.size() == 7);
    CHECK(root_from_json(parse_json(read_text_file(CATISO_TEST_DATA "/arb4.json"))) == std::optional<std::size_t>(0));
    const auto cnf = load_dimacs(CATISO_TEST_DATA "/small.cnf");
    CHECK(cnf.vars == 3);
    CHECK(cnf.clauses.size() == 2);
  }
}
