#pragma once

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qubolin/common.hpp"
#include "qubolin/milp.hpp"

namespace qubolin {

namespace detail {

inline void append_terms(std::ostringstream& os, const std::vector<std::pair<int, double>>& terms,
                         const std::vector<Variable>& vars) {
  bool first = true;
  for (const auto& [j, coef] : terms) {
    if (first) {
      if (coef < 0.0)
        os << "-" << format_double(-coef);
      else
        os << format_double(coef);
      first = false;
    } else {
      if (coef < 0.0)
        os << " - " << format_double(-coef);
      else
        os << " + " << format_double(coef);
    }
    os << " " << vars[j].name;
  }
}

inline RowTag tag_from_name(const std::string& name) {
  auto starts = [&](const char* p) {
    const std::size_t n = std::strlen(p);
    return name.size() > n && name.compare(0, n, p) == 0 && name[n] == '_';
  };
  if (starts("T1")) return RowTag::kType1;
  if (starts("AT1")) return RowTag::kAggType1;
  if (starts("W2") || starts("G2") || starts("D2") || starts("P2")) return RowTag::kType2;
  if (starts("SY") || starts("SYE")) return RowTag::kSymmetry;
  if (starts("ADW2") || starts("AB2") || starts("AG2") || starts("AD2") || starts("AGD2") ||
      starts("ATH") || starts("ATHE") || starts("HM2"))
    return RowTag::kAggType2;
  return RowTag::kOther;
}

inline void indices_from_name(const std::string& name, int& ci, int& cj) {
  ci = cj = 0;
  const std::size_t us = name.find('_');
  if (us == std::string::npos) return;
  const std::string rest = name.substr(us + 1);
  const std::size_t us2 = rest.find('_');
  try {
    if (us2 == std::string::npos) {
      ci = std::stoi(rest);
    } else {
      ci = std::stoi(rest.substr(0, us2));
      cj = std::stoi(rest.substr(us2 + 1));
    }
  } catch (...) {
    ci = cj = 0;
  }
}

}  // namespace detail

/// Restores the canonical variable order (x_1..x_n, then y_ij row-major,
/// then anything else by appearance) and rebuilds num_x / y_index. Imports
/// create variables in order of first appearance, which scrambles models
/// whose objective leads with y terms.
inline void canonicalize_variable_order(MilpModel& m) {
  const int nv = static_cast<int>(m.vars.size());
  struct Key {
    int cls;  // 0 = x, 1 = y, 2 = other
    long a, b;
    int orig;
  };
  std::vector<Key> keys(nv);
  for (int j = 0; j < nv; ++j) {
    const std::string& name = m.vars[j].name;
    Key k{2, 0, 0, j};
    if (name.size() >= 2 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      k.cls = 0;
      k.a = std::stol(name.substr(1));
    } else if (name.size() >= 4 && name[0] == 'y') {
      const std::size_t us = name.find('_');
      if (us != std::string::npos && us > 1 &&
          name.find_first_not_of("0123456789", 1) == us &&
          name.find_first_not_of("0123456789", us + 1) == std::string::npos) {
        k.cls = 1;
        k.a = std::stol(name.substr(1, us - 1));
        k.b = std::stol(name.substr(us + 1));
      }
    }
    keys[j] = k;
  }
  std::stable_sort(keys.begin(), keys.end(), [](const Key& l, const Key& r) {
    if (l.cls != r.cls) return l.cls < r.cls;
    if (l.a != r.a) return l.a < r.a;
    if (l.b != r.b) return l.b < r.b;
    return l.orig < r.orig;
  });
  std::vector<int> remap(nv);
  std::vector<Variable> vars(nv);
  for (int pos = 0; pos < nv; ++pos) {
    remap[keys[pos].orig] = pos;
    vars[pos] = m.vars[keys[pos].orig];
  }
  m.vars = std::move(vars);
  for (auto& [id, coef] : m.objective) id = remap[id];
  for (auto& r : m.rows)
    for (auto& [id, coef] : r.terms) id = remap[id];
  m.num_x = 0;
  m.y_index.clear();
  for (int pos = 0; pos < nv; ++pos) {
    const Key& k = keys[pos];
    if (k.cls == 0 && k.a == m.num_x + 1)
      ++m.num_x;
    else if (k.cls == 1)
      m.y_index[{static_cast<int>(k.a), static_cast<int>(k.b)}] = pos;
  }
}

/// CPLEX-style LP text. Deterministic: stored variable and row order, shortest
/// exact decimals. Binary variables sit in the Binaries section; every other
/// variable gets an explicit Bounds line, so re-import needs no defaults.
inline std::string export_lp(const MilpModel& m) {
  if (auto err = validate_model(m)) throw BuildError("export_lp: " + *err);
  std::ostringstream os;
  os << "\\ model " << (m.name.empty() ? "unnamed" : m.name);
  if (!m.fingerprint.empty()) os << " instance " << m.fingerprint;
  os << "\nMaximize\n obj: ";
  detail::append_terms(os, m.objective, m.vars);
  os << "\nSubject To\n";
  for (const auto& r : m.rows) {
    os << " " << r.name << ": ";
    detail::append_terms(os, r.terms, m.vars);
    switch (r.sense) {
      case Sense::kLe: os << " <= "; break;
      case Sense::kEq: os << " = "; break;
      case Sense::kGe: os << " >= "; break;
    }
    os << format_double(r.rhs) << "\n";
  }
  os << "Bounds\n";
  for (const auto& v : m.vars) {
    if (v.kind == VarKind::kBinary) continue;
    const bool lo_inf = v.lower == -kInf, up_inf = v.upper == kInf;
    os << " ";
    if (lo_inf && up_inf)
      os << v.name << " free";
    else if (up_inf)
      os << v.name << " >= " << format_double(v.lower);
    else if (lo_inf)
      os << "-inf <= " << v.name << " <= " << format_double(v.upper);
    else
      os << format_double(v.lower) << " <= " << v.name << " <= " << format_double(v.upper);
    os << "\n";
  }
  bool any_bin = false;
  for (const auto& v : m.vars) any_bin = any_bin || v.kind == VarKind::kBinary;
  if (any_bin) {
    os << "Binaries\n";
    for (const auto& v : m.vars)
      if (v.kind == VarKind::kBinary) os << " " << v.name;
    os << "\n";
  }
  os << "End\n";
  return os.str();
}

/// Parses text produced by export_lp (and plain variants of it). Restores
/// provenance tags from row names; unknown names become OTHER.
inline MilpModel import_lp(const std::string& text) {
  MilpModel m;
  std::map<std::string, int> var_of;
  std::map<std::string, bool> row_seen;
  auto var_id = [&](const std::string& name, int line) {
    auto it = var_of.find(name);
    if (it != var_of.end()) return it->second;
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0])))
      throw ParseError("bad variable name '" + name + "'", line);
    const int id = m.add_var(name, 0.0, kInf, VarKind::kContinuous);
    var_of.emplace(name, id);
    return id;
  };

  enum Section { kNone, kObjective, kRows, kBounds, kBinaries, kEnd };
  Section section = kNone;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  // Accumulates "name: terms [sense rhs]" across physical lines.
  std::string pending;
  int pending_line = 0;

  auto lower = [](std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };

  auto parse_expression = [&](const std::string& expr, int at_line,
                              std::vector<std::pair<int, double>>& terms, Sense* sense,
                              double* rhs) {
    std::istringstream ts(expr);
    std::string tok;
    double sign = 1.0;
    bool have_coef = false;
    double coef = 1.0;
    bool after_sense = false;
    while (ts >> tok) {
      if (tok == "+" || tok == "-") {
        sign = tok == "-" ? -sign : sign;
        continue;
      }
      if (tok == "<=" || tok == "=" || tok == ">=" || tok == "=<" || tok == "=>") {
        if (!sense) throw ParseError("unexpected relation in objective", at_line);
        *sense = tok == "<=" || tok == "=<" ? Sense::kLe : tok == ">=" || tok == "=>" ? Sense::kGe : Sense::kEq;
        after_sense = true;
        sign = 1.0;
        have_coef = false;
        continue;
      }
      const char c0 = tok[0];
      if (std::isdigit(static_cast<unsigned char>(c0)) || c0 == '.' ||
          ((c0 == '+' || c0 == '-') && tok.size() > 1)) {
        const double v = parse_double(tok, at_line);
        if (after_sense) {
          *rhs = sign * v;
          sign = 1.0;
          continue;
        }
        if (have_coef) throw ParseError("two numbers in a row", at_line);
        coef = v;
        have_coef = true;
        continue;
      }
      if (after_sense) throw ParseError("variable on rhs", at_line);
      terms.emplace_back(var_id(tok, at_line), sign * coef);
      sign = 1.0;
      coef = 1.0;
      have_coef = false;
    }
    if (have_coef) throw ParseError("dangling coefficient", at_line);
  };

  auto flush_pending = [&](Section into) {
    if (pending.empty()) return;
    const std::size_t colon = pending.find(':');
    std::string name = colon == std::string::npos ? "" : pending.substr(0, colon);
    while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.pop_back();
    while (!name.empty() && (name.front() == ' ' || name.front() == '\t')) name.erase(name.begin());
    std::string expr = colon == std::string::npos ? pending : pending.substr(colon + 1);
    if (into == kObjective) {
      parse_expression(expr, pending_line, m.objective, nullptr, nullptr);
    } else {
      Constraint c;
      c.name = name.empty() ? "r" + std::to_string(m.rows.size() + 1) : name;
      if (row_seen.count(c.name)) throw ParseError("duplicate row name " + c.name, pending_line);
      row_seen[c.name] = true;
      Sense s = Sense::kLe;
      double rhs = 0.0;
      parse_expression(expr, pending_line, c.terms, &s, &rhs);
      c.sense = s;
      c.rhs = rhs;
      c.tag = detail::tag_from_name(c.name);
      detail::indices_from_name(c.name, c.ci, c.cj);
      m.rows.push_back(std::move(c));
    }
    pending.clear();
  };

  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t bs = line.find('\\');
    if (bs != std::string::npos) {
      if (lineno == 1) {  // header comment carries the metadata
        std::istringstream hs(line.substr(bs + 1));
        std::string tok;
        while (hs >> tok) {
          if (tok == "model") hs >> m.name;
          if (tok == "instance") hs >> m.fingerprint;
        }
      }
      line = line.substr(0, bs);
    }
    std::string stripped = line;
    while (!stripped.empty() && (stripped.front() == ' ' || stripped.front() == '\t'))
      stripped.erase(stripped.begin());
    if (stripped.empty()) continue;
    const std::string low = lower(stripped);
    Section prev = section;
    if (low == "maximize" || low == "max") {
      section = kObjective;
    } else if (low == "subject to" || low == "st" || low == "s.t.") {
      section = kRows;
    } else if (low == "bounds") {
      section = kBounds;
    } else if (low == "binaries" || low == "binary" || low == "bin") {
      section = kBinaries;
    } else if (low == "end") {
      section = kEnd;
    } else {
      if (section == kObjective || section == kRows) {
        if (stripped.find(':') != std::string::npos) {
          flush_pending(section);
          pending_line = lineno;
        }
        pending += " " + stripped;
      } else if (section == kBounds) {
        std::istringstream bs2(stripped);
        std::vector<std::string> toks;
        std::string t;
        while (bs2 >> t) toks.push_back(t);
        auto as_num = [&](const std::string& s) -> double {
          const std::string l = lower(s);
          if (l == "-inf" || l == "-infinity") return -kInf;
          if (l == "+inf" || l == "inf" || l == "infinity") return kInf;
          return parse_double(s, lineno);
        };
        if (toks.size() == 2 && lower(toks[1]) == "free") {
          const int id = var_id(toks[0], lineno);
          m.vars[id].lower = -kInf;
          m.vars[id].upper = kInf;
        } else if (toks.size() == 3) {  // name >= v  |  name <= v
          const int id = var_id(toks[0], lineno);
          if (toks[1] == ">=")
            m.vars[id].lower = as_num(toks[2]);
          else if (toks[1] == "<=")
            m.vars[id].upper = as_num(toks[2]);
          else
            throw ParseError("bad bounds line", lineno);
        } else if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=") {
          const int id = var_id(toks[2], lineno);
          m.vars[id].lower = as_num(toks[0]);
          m.vars[id].upper = as_num(toks[4]);
        } else {
          throw ParseError("bad bounds line", lineno);
        }
      } else if (section == kBinaries) {
        std::istringstream ns(stripped);
        std::string name;
        while (ns >> name) {
          const int id = var_id(name, lineno);
          m.vars[id].kind = VarKind::kBinary;
          m.vars[id].lower = 0.0;
          m.vars[id].upper = 1.0;
        }
      } else if (section == kNone || section == kEnd) {
        throw ParseError("content outside any section", lineno);
      }
      continue;
    }
    if (prev == kObjective || prev == kRows) flush_pending(prev);
  }
  flush_pending(section == kObjective || section == kRows ? section : kRows);

  canonicalize_variable_order(m);
  if (auto err = validate_model(m)) throw ParseError("imported model invalid: " + *err, lineno);
  return m;
}

}  // namespace qubolin
