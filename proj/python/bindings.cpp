#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "catiso/coc.hpp"
#include "catiso/errors.hpp"
#include "catiso/fsat.hpp"
#include "catiso/hashing.hpp"
#include "catiso/oracles.hpp"
#include "catiso/report.hpp"
#include "catiso/s2d.hpp"
#include "cli.hpp"

namespace py = pybind11;
using namespace catiso;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

std::string big_string(const BigInt& x) { return x.str(); }

TapeFill fill_from(const std::string& fill, std::uint64_t seed) {
  if (fill == "random") return TapeFill::random(seed);
  if (fill == "zeros") return TapeFill::zeros();
  throw ConfigError("fill must be \"random\", \"zeros\" or \"adversarial\"");
}

py::dict coc(const std::vector<std::vector<std::size_t>>& layers, const Pairs& edges, std::size_t s, std::size_t t,
             std::uint64_t seed, std::optional<std::uint64_t> r, double alpha, const std::string& fill) {
  const LayeredDag g(layers, edges);
  CocConfig config;
  config.alpha = alpha;
  config.r = r;
  const CocPlan plan = plan_coc(g, config);
  CompressOrComputeEngine probe(plan.layout, dag_goodness(g, plan));
  CatalyticTape tape = probe.make_tape(fill == "adversarial" ? adversarial_fill(probe) : fill_from(fill, seed));
  CocReport rep;
  {
    py::gil_scoped_release release;
    rep = compress_or_compute(g, s, t, tape, plan);
  }
  py::dict out;
  out["verdict"] = rep.verdict;
  out["distance"] = rep.distance ? py::object(py::str(big_string(*rep.distance))) : py::object(py::none());
  out["path"] = rep.engine.path == EnginePath::A ? "A" : "B";
  out["compressed_blocks"] = rep.engine.compressed_blocks;
  out["freed_bits"] = rep.engine.freed_bits;
  out["goodness_queries"] = rep.engine.goodness_queries;
  out["tape_restored"] = rep.engine.tape_restored;
  out["r"] = plan.family.r;
  out["delta"] = plan.schedule.delta;
  return out;
}

py::dict s2d_result(const S2dResult& res, unsigned m) {
  py::dict out;
  out["path"] = to_string(res.path);
  out["witness"] = res.witness ? py::object(py::str(format_witness(*res.witness, m))) : py::object(py::none());
  out["wmin"] = res.wmin;
  out["isolating_index"] = res.isolating_index ? py::object(py::int_(*res.isolating_index)) : py::object(py::none());
  out["compressed"] = res.compressed;
  out["freed_bits"] = res.freed_bits;
  out["queries_total"] = res.queries_total;
  out["tape_restored"] = res.tape_restored;
  return out;
}

py::dict k_subset(unsigned m, unsigned k, std::optional<Weights> weights, std::uint64_t seed,
                  std::optional<std::size_t> n_weights) {
  const Relation relation = k_subset_relation(m, k);
  BruteForceOracle oracle(relation);
  const auto layout = weight_tape_layout(m, n_weights.value_or(default_weight_count(m)));
  CatalyticTape tape = make_weight_tape(layout, TapeFill::random(seed));
  S2dOptions options;
  options.input_weights = weights;
  const S2dResult res = search_to_decision(relation, oracle, tape, layout, options);
  py::dict out = s2d_result(res, m);
  // Report the minimum under the caller's weights, as the CLI does.
  if (weights && res.witness) {
    out["combined_wmin"] = res.wmin;
    out["wmin"] = weight_of(*res.witness, *weights);
  }
  return out;
}

py::dict sat_witness(const std::string& dimacs, std::uint64_t seed) {
  const Cnf cnf = parse_dimacs_string(dimacs);
  const Relation relation = sat_relation(cnf);
  BruteForceOracle oracle(relation);
  const auto layout = weight_tape_layout(cnf.vars, default_weight_count(cnf.vars));
  CatalyticTape tape = make_weight_tape(layout, TapeFill::random(seed));
  return s2d_result(search_to_decision(relation, oracle, tape, layout), cnf.vars);
}

py::dict fsat_run(const std::string& dimacs, std::uint64_t seed) {
  const Cnf cnf = parse_dimacs_string(dimacs);
  const auto layout = weight_tape_layout(cnf.vars, default_weight_count(cnf.vars));
  CatalyticTape tape = make_weight_tape(layout, TapeFill::random(seed));
  BruteForceFsatOracle oracle;
  const FsatResult res = run_fsat(cnf, tape, layout, oracle);
  py::dict out;
  out["satisfiable"] = res.assignment.has_value();
  out["assignment"] =
      res.assignment ? py::object(py::str(format_witness(*res.assignment, cnf.vars))) : py::object(py::none());
  out["path"] = to_string(res.path);
  out["isolated_model_count"] = res.isolated.model_count();
  out["round_queries"] = std::vector<std::size_t>{res.round_queries(0), res.round_queries(1)};
  out["tape_restored"] = res.tape_restored;
  return out;
}

std::map<std::uint64_t, std::string> arborescence_counts(std::size_t n, const Pairs& arcs, const Weights& weights,
                                                         std::size_t root, const std::string& method) {
  DetMethod m = DetMethod::Interpolation;
  if (method == "bareiss") {
    m = DetMethod::Bareiss;
  } else if (method != "interpolation") {
    throw ConfigError("method must be \"interpolation\" or \"bareiss\"");
  }
  const Polynomial p = matrix_tree_count(Digraph{n, arcs}, weights, root, m);
  std::map<std::uint64_t, std::string> out;
  for (const auto& [e, c] : p.terms()) out[e] = big_string(c);
  return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> full = {"catiso"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Catalytic isolation engines";
  m.attr("REPORT_SCHEMA_VERSION") = kReportSchemaVersion;

  static py::exception<CorruptionError> corruption(m, "CorruptionError", PyExc_RuntimeError);
  static py::exception<LimitError> limit(m, "LimitError", PyExc_OverflowError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CorruptionError& e) {
      corruption(e.what());
    } catch (const LimitError& e) {
      limit(e.what());
    } catch (const UsageError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("hash_eval", [](std::uint64_t domain, std::uint64_t range, std::uint64_t a, std::uint64_t b, std::uint64_t x) {
    return eval(family_params(domain, range), HashSeed{a, b}, x);
  }, py::arg("m"), py::arg("r"), py::arg("a"), py::arg("b"), py::arg("x"));
  m.def("family_params", [](std::uint64_t domain, std::uint64_t range) {
    const auto f = family_params(domain, range);
    py::dict out;
    out["m"] = f.m;
    out["r"] = f.r;
    out["p"] = f.p;
    out["seed_bits"] = f.seed_bits;
    return out;
  }, py::arg("m"), py::arg("r"));
  m.def("coc", &coc, "Reachability on a layered DAG with a catalytic tape", py::arg("layers"), py::arg("edges"),
        py::arg("s"), py::arg("t"), py::arg("seed") = 0, py::arg("r") = py::none(), py::arg("alpha") = 0.0,
        py::arg("fill") = "random");
  m.def("k_subset", &k_subset, "Minimum-weight k-subset by search-to-decision", py::arg("m"), py::arg("k"),
        py::arg("weights") = py::none(), py::arg("seed") = 0, py::arg("n_weights") = py::none());
  m.def("sat_witness", &sat_witness, py::arg("dimacs"), py::arg("seed") = 0);
  m.def("fsat", &fsat_run, "Two-round FSAT with isolation", py::arg("dimacs"), py::arg("seed") = 0);
  m.def("arborescence_counts", &arborescence_counts, "Weight -> number of arborescences", py::arg("n"),
        py::arg("arcs"), py::arg("weights"), py::arg("root") = 0, py::arg("method") = "interpolation");
  m.def("run_cli", &run_cli, "Run the command-line tool in-process; returns (exit_code, stdout, stderr)",
        py::arg("args"));
}
