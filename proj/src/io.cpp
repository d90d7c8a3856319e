#include "catiso/io.hpp"

#include <fstream>
#include <sstream>

#include "catiso/errors.hpp"

namespace catiso {
namespace {

using nlohmann::json;

std::vector<std::pair<std::size_t, std::size_t>> pairs_from(const json& j, const char* key) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : j.at(key)) {
    if (!e.is_array() || e.size() != 2) throw FormatError(std::string(key) + " entries must be [u, v] pairs");
    out.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return out;
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed input: ") + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("JSON parse error: ") + e.what());
  }
}

LayeredDag graph_from_json(const nlohmann::json& j) {
  return guarded([&] {
    auto layers = j.at("layers").get<std::vector<std::vector<std::size_t>>>();
    LayeredDag g(std::move(layers), pairs_from(j, "edges"));
    if (j.contains("n") && j.at("n").get<std::size_t>() != g.n()) {
      throw FormatError("declared n does not match the layers");
    }
    return g;
  });
}

nlohmann::json graph_to_json(const LayeredDag& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  std::vector<std::vector<std::size_t>> layers(g.layers().begin(),
                                               g.layers().begin() + static_cast<std::ptrdiff_t>(g.original_layers()));
  return {{"n", g.n()}, {"layers", layers}, {"edges", edges}};
}

LayeredDag graph_from_text(const std::string& text) {
  std::vector<std::vector<std::size_t>> layers;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    std::string tag;
    if (!(row >> tag)) continue;
    const std::string where = "graph line " + std::to_string(line_no);
    if (tag == "L") {
      long layer = -1;
      if (!(row >> layer) || layer < 0) throw FormatError(where + ": expected 'L <layer> <v...>'");
      if (layers.size() <= static_cast<std::size_t>(layer)) layers.resize(static_cast<std::size_t>(layer) + 1);
      long v = 0;
      while (row >> v) {
        if (v < 0) throw FormatError(where + ": negative vertex id");
        layers[static_cast<std::size_t>(layer)].push_back(static_cast<std::size_t>(v));
      }
      if (!row.eof()) throw FormatError(where + ": bad vertex id");
    } else if (tag == "E") {
      long u = -1;
      long v = -1;
      std::string extra;
      if (!(row >> u >> v) || u < 0 || v < 0 || (row >> extra)) throw FormatError(where + ": expected 'E <u> <v>'");
      edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    } else {
      throw FormatError(where + ": unknown record '" + tag + "'");
    }
  }
  return LayeredDag(std::move(layers), std::move(edges));
}

LayeredDag load_graph(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return graph_from_json(parse_json(text));
  return graph_from_text(text);
}

LayeredCircuit circuit_from_json(const nlohmann::json& j) {
  return guarded([&] {
    std::vector<std::vector<std::size_t>> layers;
    std::vector<Gate> gates;
    std::vector<bool> defined;
    for (const auto& layer : j.at("layers")) {
      layers.emplace_back();
      for (const auto& entry : layer) {
        const auto id = entry.at("gate").get<std::size_t>();
        if (id >= gates.size()) {
          gates.resize(id + 1);
          defined.resize(id + 1, false);
        }
        if (defined[id]) throw FormatError("gate " + std::to_string(id) + " defined twice");
        defined[id] = true;
        Gate gate;
        const auto kind = entry.at("kind").get<std::string>();
        if (kind == "and" || kind == "or") {
          gate.kind = kind == "and" ? GateKind::And : GateKind::Or;
          gate.children = entry.at("children").get<std::vector<std::size_t>>();
        } else if (kind == "lit") {
          gate.kind = GateKind::Lit;
          const auto& lit = entry.at("literal");
          if (lit.is_boolean()) {
            gate.constant = lit.get<bool>();
          } else {
            gate.literal = lit.get<int>();
            if (gate.literal == 0) throw FormatError("literal 0 is not a variable; use true/false");
          }
        } else {
          throw FormatError("unknown gate kind '" + kind + "'");
        }
        gates[id] = std::move(gate);
        layers.back().push_back(id);
      }
    }
    for (std::size_t g = 0; g < defined.size(); ++g) {
      if (!defined[g]) throw FormatError("gate " + std::to_string(g) + " is never defined");
    }
    return LayeredCircuit(std::move(gates), std::move(layers), j.at("output").get<std::size_t>());
  });
}

nlohmann::json circuit_to_json(const LayeredCircuit& c) {
  json layers = json::array();
  for (std::size_t k = 0; k <= c.depth(); ++k) {
    json layer = json::array();
    for (std::size_t g : c.layer(k)) {
      const Gate& gate = c.gate(g);
      json entry = {{"gate", g}};
      if (gate.kind == GateKind::Lit) {
        entry["kind"] = "lit";
        if (gate.literal == 0) {
          entry["literal"] = gate.constant;
        } else {
          entry["literal"] = gate.literal;
        }
      } else {
        entry["kind"] = gate.kind == GateKind::And ? "and" : "or";
        entry["children"] = gate.children;
      }
      layer.push_back(entry);
    }
    layers.push_back(layer);
  }
  return {{"layers", layers}, {"output", c.output()}};
}

LayeredCircuit load_circuit(const std::filesystem::path& path) {
  return circuit_from_json(parse_json(read_text_file(path)));
}

Graph undirected_from_json(const nlohmann::json& j) {
  return guarded([&] {
    Graph g;
    g.n = j.at("n").get<std::size_t>();
    g.edges = pairs_from(j, "edges");
    if (j.contains("colors")) {
      for (const auto& c : j.at("colors")) {
        if (c.is_boolean()) {
          g.red.push_back(c.get<bool>());
        } else {
          const auto name = c.get<std::string>();
          if (name != "red" && name != "blue") throw FormatError("edge colors must be \"red\" or \"blue\"");
          g.red.push_back(name == "red");
        }
      }
    }
    validate(g);
    return g;
  });
}

Digraph digraph_from_json(const nlohmann::json& j) {
  return guarded([&] {
    Digraph g;
    g.n = j.at("n").get<std::size_t>();
    g.arcs = pairs_from(j, j.contains("arcs") ? "arcs" : "edges");
    validate(g);
    return g;
  });
}

std::optional<std::size_t> root_from_json(const nlohmann::json& j) {
  if (!j.contains("root")) return std::nullopt;
  return guarded([&] { return j.at("root").get<std::size_t>(); });
}

Cnf load_dimacs(const std::filesystem::path& path) { return parse_dimacs_string(read_text_file(path)); }

}  // namespace catiso
