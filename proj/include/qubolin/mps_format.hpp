#pragma once

#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qubolin/lp_format.hpp"
#include "qubolin/milp.hpp"

namespace qubolin {

/// MPS text with ROWS/COLUMNS/RHS/BOUNDS sections; integrality via classic
/// INTORG/INTEND markers and an OBJSENSE MAX header (models are maximize
/// form). Fields are column-aligned for readability; the reader is
/// whitespace-tolerant.
inline std::string export_mps(const MilpModel& m) {
  if (auto err = validate_model(m)) throw BuildError("export_mps: " + *err);
  std::size_t width = 8;
  for (const auto& v : m.vars) width = std::max(width, v.name.size());
  for (const auto& r : m.rows) width = std::max(width, r.name.size());
  auto pad = [&](const std::string& s) {
    std::string out = s;
    out.resize(width + 2, ' ');
    return out;
  };
  std::ostringstream os;
  os << "NAME          " << (m.name.empty() ? "model" : m.name);
  if (!m.fingerprint.empty()) os << "." << m.fingerprint;
  os << "\nOBJSENSE\n    MAX\nROWS\n N  obj\n";
  for (const auto& r : m.rows) {
    const char s = r.sense == Sense::kLe ? 'L' : r.sense == Sense::kEq ? 'E' : 'G';
    os << " " << s << "  " << r.name << "\n";
  }
  os << "COLUMNS\n";
  // Column-major walk in variable order; gather each variable's entries.
  std::vector<std::vector<std::pair<std::string, double>>> entries(m.vars.size());
  for (const auto& [j, coef] : m.objective) entries[j].emplace_back("obj", coef);
  for (const auto& r : m.rows)
    for (const auto& [j, coef] : r.terms) entries[j].emplace_back(r.name, coef);
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < m.vars.size(); ++j) {
    const bool is_int = m.vars[j].kind == VarKind::kBinary;
    if (is_int != in_int) {
      os << "    " << pad("M" + std::to_string(++marker)) << pad("'MARKER'")
         << (is_int ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = is_int;
    }
    for (const auto& [row, coef] : entries[j])
      os << "    " << pad(m.vars[j].name) << pad(row) << format_double(coef) << "\n";
    if (entries[j].empty())
      os << "    " << pad(m.vars[j].name) << pad("obj") << "0\n";
  }
  if (in_int)
    os << "    " << pad("M" + std::to_string(++marker)) << pad("'MARKER'") << "'INTEND'\n";
  os << "RHS\n";
  for (const auto& r : m.rows)
    if (r.rhs != 0.0) os << "    " << pad("RHS") << pad(r.name) << format_double(r.rhs) << "\n";
  os << "BOUNDS\n";
  for (const auto& v : m.vars) {
    if (v.kind == VarKind::kBinary) {
      os << " BV " << pad("BND") << v.name << "\n";
      continue;
    }
    const bool lo_inf = v.lower == -kInf, up_inf = v.upper == kInf;
    if (lo_inf && up_inf) {
      os << " FR " << pad("BND") << v.name << "\n";
      continue;
    }
    if (lo_inf) os << " MI " << pad("BND") << v.name << "\n";
    if (!lo_inf && v.lower != 0.0)
      os << " LO " << pad("BND") << pad(v.name) << format_double(v.lower) << "\n";
    if (!up_inf) os << " UP " << pad("BND") << pad(v.name) << format_double(v.upper) << "\n";
  }
  os << "ENDATA\n";
  return os.str();
}

inline MilpModel import_mps(const std::string& text) {
  MilpModel m;
  std::map<std::string, int> row_of, var_of;
  std::map<std::string, Sense> row_sense;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  enum Section { kNone, kObjsense, kRowsSec, kColumns, kRhs, kBoundsSec, kRanges, kDone };
  Section section = kNone;
  bool in_int = false;
  std::string obj_row = "obj";

  auto var_id = [&](const std::string& name) {
    auto it = var_of.find(name);
    if (it != var_of.end()) return it->second;
    const int id = m.add_var(name, 0.0, kInf, VarKind::kContinuous);
    var_of.emplace(name, id);
    return id;
  };

  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    std::istringstream ts(line);
    std::vector<std::string> tok;
    std::string t;
    while (ts >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {  // section header
      const std::string& h = tok[0];
      if (h == "NAME") {
        if (tok.size() > 1) {
          const std::size_t dot = tok[1].find('.');
          m.name = tok[1].substr(0, dot);
          if (dot != std::string::npos) m.fingerprint = tok[1].substr(dot + 1);
        }
        continue;
      }
      if (h == "OBJSENSE") section = kObjsense;
      else if (h == "ROWS") section = kRowsSec;
      else if (h == "COLUMNS") section = kColumns;
      else if (h == "RHS") section = kRhs;
      else if (h == "BOUNDS") section = kBoundsSec;
      else if (h == "RANGES") section = kRanges;
      else if (h == "ENDATA") section = kDone;
      else throw ParseError("unknown MPS section " + h, lineno);
      continue;
    }
    switch (section) {
      case kObjsense:
        if (tok[0] != "MAX" && tok[0] != "MAXIMIZE")
          throw ParseError("only maximize MPS files are supported", lineno);
        break;
      case kRowsSec: {
        if (tok.size() != 2) throw ParseError("bad ROWS line", lineno);
        if (tok[0] == "N") {
          obj_row = tok[1];
          break;
        }
        Sense s = tok[0] == "L" ? Sense::kLe : tok[0] == "G" ? Sense::kGe : tok[0] == "E" ? Sense::kEq
                  : throw ParseError("bad row sense " + tok[0], lineno);
        Constraint c;
        c.name = tok[1];
        if (row_of.count(c.name)) throw ParseError("duplicate row " + c.name, lineno);
        c.sense = s;
        c.tag = detail::tag_from_name(c.name);
        detail::indices_from_name(c.name, c.ci, c.cj);
        row_of[c.name] = static_cast<int>(m.rows.size());
        row_sense[c.name] = s;
        m.rows.push_back(std::move(c));
        break;
      }
      case kColumns: {
        if (tok.size() >= 3 && tok[2] == "'INTORG'") {
          in_int = true;
          break;
        }
        if (tok.size() >= 3 && tok[2] == "'INTEND'") {
          in_int = false;
          break;
        }
        if (tok.size() != 3 && tok.size() != 5) throw ParseError("bad COLUMNS line", lineno);
        const int id = var_id(tok[0]);
        if (in_int) {
          m.vars[id].kind = VarKind::kBinary;
          m.vars[id].lower = 0.0;
          m.vars[id].upper = 1.0;
        }
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = parse_double(tok[k + 1], lineno);
          if (tok[k] == obj_row) {
            m.objective.emplace_back(id, v);
          } else {
            auto it = row_of.find(tok[k]);
            if (it == row_of.end()) throw ParseError("unknown row " + tok[k], lineno);
            if (v != 0.0) m.rows[it->second].terms.emplace_back(id, v);
          }
        }
        break;
      }
      case kRhs: {
        if (tok.size() != 3 && tok.size() != 5) throw ParseError("bad RHS line", lineno);
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          auto it = row_of.find(tok[k]);
          if (it == row_of.end()) throw ParseError("unknown row " + tok[k], lineno);
          m.rows[it->second].rhs = parse_double(tok[k + 1], lineno);
        }
        break;
      }
      case kBoundsSec: {
        if (tok.size() < 3) throw ParseError("bad BOUNDS line", lineno);
        const std::string& kind = tok[0];
        const int id = var_id(tok[2]);
        const double v = tok.size() > 3 ? parse_double(tok[3], lineno) : 0.0;
        if (kind == "UP") m.vars[id].upper = v;
        else if (kind == "LO") m.vars[id].lower = v;
        else if (kind == "FX") m.vars[id].lower = m.vars[id].upper = v;
        else if (kind == "FR") m.vars[id].lower = -kInf, m.vars[id].upper = kInf;
        else if (kind == "MI") m.vars[id].lower = -kInf;
        else if (kind == "PL") m.vars[id].upper = kInf;
        else if (kind == "BV") {
          m.vars[id].kind = VarKind::kBinary;
          m.vars[id].lower = 0.0;
          m.vars[id].upper = 1.0;
        } else {
          throw ParseError("unsupported bound kind " + kind, lineno);
        }
        break;
      }
      case kRanges: throw ParseError("RANGES section not supported", lineno);
      case kNone: throw ParseError("data before any section", lineno);
      case kDone: break;
    }
  }
  canonicalize_variable_order(m);
  if (m.objective.empty()) m.objective.emplace_back(0, 0.0);
  if (auto err = validate_model(m)) throw ParseError("imported model invalid: " + *err, lineno);
  return m;
}

}  // namespace qubolin
