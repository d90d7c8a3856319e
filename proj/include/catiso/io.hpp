#pragma once

#include <cstddef>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>

#include "catiso/circuits.hpp"
#include "catiso/cnf.hpp"
#include "catiso/dag.hpp"
#include "catiso/oracles.hpp"

namespace catiso {

std::string read_text_file(const std::filesystem::path& path);
nlohmann::json parse_json(const std::string& text);

// {n, layers: [[v...]], edges: [[u, v]]}
LayeredDag graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const LayeredDag& g);
// Lines "L <layer> <v...>" and "E <u> <v>"; '#' starts a comment.
LayeredDag graph_from_text(const std::string& text);
// JSON when the first non-blank character is '{', text format otherwise.
LayeredDag load_graph(const std::filesystem::path& path);

// {layers: [[{gate, kind, children | literal}]], output}
LayeredCircuit circuit_from_json(const nlohmann::json& j);
nlohmann::json circuit_to_json(const LayeredCircuit& c);
LayeredCircuit load_circuit(const std::filesystem::path& path);

// Shared graph format plus optional {colors: ["red"|"blue"...], root}.
Graph undirected_from_json(const nlohmann::json& j);
Digraph digraph_from_json(const nlohmann::json& j);
std::optional<std::size_t> root_from_json(const nlohmann::json& j);

Cnf load_dimacs(const std::filesystem::path& path);

}  // namespace catiso
