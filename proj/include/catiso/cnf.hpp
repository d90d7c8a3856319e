#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace catiso {

// Assignment masks: bit (v-1) holds variable v.
using Mask = std::uint64_t;

struct Cnf {
  unsigned vars = 0;
  std::vector<std::vector<int>> clauses;

  bool satisfied(Mask assignment) const;
};

Cnf parse_dimacs(std::istream& in);
Cnf parse_dimacs_string(const std::string& text);
std::string to_dimacs(const Cnf& cnf);

// Models of `cnf` in ascending mask order (vars <= 24).
std::vector<Mask> all_models(const Cnf& cnf);

}  // namespace catiso
