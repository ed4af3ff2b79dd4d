#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qubolin/common.hpp"

namespace qubolin {

enum class VarKind { kBinary, kContinuous };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  VarKind kind = VarKind::kContinuous;
};

enum class Sense { kLe, kEq, kGe };

/// Provenance class of a constraint row. Bound-class restrictions (y <= 1 and
/// friends) are never rows; they live on the variables.
enum class RowTag { kType1, kType2, kAggType1, kAggType2, kSymmetry, kBound, kOther };

inline const char* row_tag_name(RowTag t) {
  switch (t) {
    case RowTag::kType1: return "TYPE1";
    case RowTag::kType2: return "TYPE2";
    case RowTag::kAggType1: return "AGG_TYPE1";
    case RowTag::kAggType2: return "AGG_TYPE2";
    case RowTag::kSymmetry: return "SYMMETRY";
    case RowTag::kBound: return "BOUND";
    case RowTag::kOther: return "OTHER";
  }
  return "OTHER";
}

struct Constraint {
  std::string name;  // encodes class and indices, e.g. "T1_1_2", "AT1_3"
  std::vector<std::pair<int, double>> terms;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
  RowTag tag = RowTag::kOther;
  int ci = 0, cj = 0;  // 1-based source indices; cj is 0 for per-row aggregates
};

/// A mixed binary/continuous linear program in maximize form, plus the
/// metadata needed to trace it back to the instance it was built from.
struct MilpModel {
  std::string name;         // canonical formulation name or file stem
  std::string fingerprint;  // instance fingerprint, empty for imported models
  std::vector<Variable> vars;
  std::vector<Constraint> rows;
  std::vector<std::pair<int, double>> objective;  // maximize
  int num_x = 0;                                  // leading x variables
  bool relaxation_only = false;  // built for LP study; not a valid integer model
  std::map<std::pair<int, int>, int> y_index;     // 1-based (i,j) -> var index

  int add_var(const std::string& n, double lo, double up, VarKind k) {
    vars.push_back({n, lo, up, k});
    return static_cast<int>(vars.size()) - 1;
  }
  int y(int i, int j) const {  // 1-based
    auto it = y_index.find({i, j});
    return it == y_index.end() ? -1 : it->second;
  }
};

/// Counts general constraints; rows tagged BOUND (only possible in imported
/// models) are excluded, mirroring the split between general and bound
/// constraints in the formulation size formulas.
inline int count_general_constraints(const MilpModel& m) {
  int k = 0;
  for (const auto& r : m.rows)
    if (r.tag != RowTag::kBound) ++k;
  return k;
}

inline std::optional<std::string> validate_model(const MilpModel& m) {
  const int nv = static_cast<int>(m.vars.size());
  for (const auto& v : m.vars) {
    if (v.name.empty()) return "unnamed variable";
    if (!(v.lower <= v.upper)) return "empty bound range on " + v.name;
    if (v.kind == VarKind::kBinary && (v.lower != 0.0 || v.upper != 1.0))
      return "binary variable " + v.name + " must have bounds [0,1]";
  }
  for (const auto& r : m.rows) {
    std::vector<char> seen(nv, 0);
    for (const auto& [id, coef] : r.terms) {
      if (id < 0 || id >= nv) return "row " + r.name + " references unknown variable";
      if (seen[id]) return "row " + r.name + " has duplicate variable";
      seen[id] = 1;
      if (!std::isfinite(coef)) return "row " + r.name + " has non-finite coefficient";
    }
    if (!std::isfinite(r.rhs)) return "row " + r.name + " has non-finite rhs";
  }
  for (const auto& [id, coef] : m.objective) {
    if (id < 0 || id >= nv) return "objective references unknown variable";
    if (!std::isfinite(coef)) return "objective has non-finite coefficient";
  }
  return std::nullopt;
}

/// Fixed objective assignment evaluated on the model (used by round-trip
/// property tests).
inline double model_objective_at(const MilpModel& m, const std::vector<double>& vals) {
  double v = 0.0;
  for (const auto& [id, coef] : m.objective) v += coef * vals[id];
  return v;
}

}  // namespace qubolin
