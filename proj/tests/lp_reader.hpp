#pragma once

// Minimal reader for the LP subset written by emit_lp, used to cross-check
// emitted files without going through LinearModel.

#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace mdnet::oracle {

struct LpRow {
  std::string name;
  std::vector<std::pair<double, std::string>> terms;
  std::string sense;
  double rhs = 0;
};

struct LpFile {
  std::vector<std::pair<double, std::string>> objective;
  std::vector<LpRow> rows;
  std::map<std::string, std::pair<double, double>> bounds;
  std::set<std::string> binaries;
  std::set<std::string> variables;  // every name mentioned anywhere

  bool satisfied(const std::map<std::string, double>& values, double tol = 1e-9) const {
    auto value = [&](const std::string& v) {
      auto it = values.find(v);
      return it == values.end() ? 0.0 : it->second;
    };
    for (const auto& r : rows) {
      double lhs = 0;
      for (const auto& [c, v] : r.terms) lhs += c * value(v);
      if (r.sense == "<=" && lhs > r.rhs + tol) return false;
      if (r.sense == ">=" && lhs < r.rhs - tol) return false;
      if (r.sense == "=" && std::abs(lhs - r.rhs) > tol) return false;
    }
    for (const auto& [v, b] : bounds) {
      if (value(v) < b.first - tol || value(v) > b.second + tol) return false;
    }
    return true;
  }
};

namespace detail {

inline bool is_number(const std::string& tok) {
  char* end = nullptr;
  std::strtod(tok.c_str(), &end);
  return !tok.empty() && end == tok.c_str() + tok.size();
}

// "4 w_1_2_1 - x_1_1 + 2.5 y" -> terms
inline std::vector<std::pair<double, std::string>> parse_terms(const std::vector<std::string>& toks) {
  std::vector<std::pair<double, std::string>> out;
  double sign = 1;
  double coef = 1;
  for (const auto& t : toks) {
    if (t == "+") {
      sign = 1;
    } else if (t == "-") {
      sign = -1;
    } else if (is_number(t)) {
      coef = std::strtod(t.c_str(), nullptr);
    } else {
      out.emplace_back(sign * coef, t);
      sign = 1;
      coef = 1;
    }
  }
  return out;
}

}  // namespace detail

inline LpFile read_lp(const std::string& text) {
  LpFile lp;
  std::istringstream in(text);
  std::string section;
  std::string line;
  std::string pending;  // a row may span several lines
  auto flush_row = [&] {
    if (pending.empty()) return;
    std::istringstream ls(pending);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    pending.clear();
    std::string name = toks.front();
    name.pop_back();  // trailing ':'
    toks.erase(toks.begin());
    if (section == "max") {
      lp.objective = detail::parse_terms(toks);
      for (const auto& [c, v] : lp.objective) lp.variables.insert(v);
      return;
    }
    LpRow row;
    row.name = name;
    row.rhs = std::strtod(toks.back().c_str(), nullptr);
    row.sense = toks[toks.size() - 2];
    toks.resize(toks.size() - 2);
    row.terms = detail::parse_terms(toks);
    for (const auto& [c, v] : row.terms) lp.variables.insert(v);
    lp.rows.push_back(std::move(row));
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Maximize") {
      section = "max";
      continue;
    }
    if (line == "Subject To" || line == "Bounds" || line == "Binary" || line == "End") {
      flush_row();
      section = line;
      continue;
    }
    if (section == "max" || section == "Subject To") {
      bool continuation = line.rfind("  ", 0) == 0;
      if (!continuation) flush_row();
      pending += " " + line;
    } else if (section == "Bounds") {
      std::istringstream ls(line);
      std::vector<std::string> toks;
      for (std::string t; ls >> t;) toks.push_back(t);
      if (toks.size() == 3 && toks[1] == "=") {
        lp.bounds[toks[0]] = {std::strtod(toks[2].c_str(), nullptr), std::strtod(toks[2].c_str(), nullptr)};
        lp.variables.insert(toks[0]);
      } else if (toks.size() == 5) {
        lp.bounds[toks[2]] = {std::strtod(toks[0].c_str(), nullptr), std::strtod(toks[4].c_str(), nullptr)};
        lp.variables.insert(toks[2]);
      }
    } else if (section == "Binary") {
      std::istringstream ls(line);
      for (std::string t; ls >> t;) {
        lp.binaries.insert(t);
        lp.variables.insert(t);
      }
    }
  }
  return lp;
}

}  // namespace mdnet::oracle
