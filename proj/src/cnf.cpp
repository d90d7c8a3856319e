#include "catiso/cnf.hpp"

#include <cstdlib>
#include <sstream>

#include "catiso/errors.hpp"

namespace catiso {

bool Cnf::satisfied(Mask assignment) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool value = ((assignment >> (std::abs(lit) - 1)) & 1U) != 0;
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

Cnf parse_dimacs(std::istream& in) {
  Cnf cnf;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string first;
    if (!(row >> first) || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      long vars = -1;
      long clauses = -1;
      if (header || !(row >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0) {
        throw FormatError("DIMACS line " + std::to_string(line_no) + ": bad problem line");
      }
      if (vars > 64) throw LimitError("DIMACS formula has more than 64 variables");
      cnf.vars = static_cast<unsigned>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      header = true;
      continue;
    }
    if (!header) throw FormatError("DIMACS line " + std::to_string(line_no) + ": clause before problem line");
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      char* end = nullptr;
      long lit = std::strtol(token.c_str(), &end, 10);
      if (*end != '\0') throw FormatError("DIMACS line " + std::to_string(line_no) + ": bad literal '" + token + "'");
      if (lit == 0) {
        cnf.clauses.push_back(current);
        current.clear();
      } else {
        if (std::labs(lit) > static_cast<long>(cnf.vars)) {
          throw FormatError("DIMACS line " + std::to_string(line_no) + ": variable out of range");
        }
        current.push_back(static_cast<int>(lit));
      }
    }
  }
  if (!header) throw FormatError("DIMACS input has no problem line");
  if (!current.empty()) cnf.clauses.push_back(current);
  if (cnf.clauses.size() != declared_clauses) {
    throw FormatError("DIMACS header declares " + std::to_string(declared_clauses) + " clauses, found " +
                      std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

Cnf parse_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

std::vector<Mask> all_models(const Cnf& cnf) {
  if (cnf.vars > 24) throw LimitError("model enumeration limited to 24 variables");
  std::vector<Mask> models;
  for (Mask y = 0; y < (Mask{1} << cnf.vars); ++y) {
    if (cnf.satisfied(y)) models.push_back(y);
  }
  return models;
}

}  // namespace catiso
