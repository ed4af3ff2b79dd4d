#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qubolin/milp.hpp"
#include "qubolin/model_id.hpp"
#include "qubolin/qubo.hpp"
#include "qubolin/weights.hpp"

namespace qubolin {

struct BuildOptions {
  bool allow_invalid = false;  // required for every known-invalid formulation
  bool lp_study = false;       // relax integrality; zero dual weights admissible
  bool strip_y_upper = false;  // drop the y<=1 bounds of PK(a); needs allow_invalid
};

namespace detail {

/// Which index set a row family ranges over.
enum class Scope { kAll, kPlus, kMinus };

/// Row families shared by the catalog. One plan item expands to one row per
/// ordered pair (pairwise families) or one row per i with a nonempty set
/// (aggregated families).
enum class RowClass {
  kT1,    // x_i + x_j - y_ij <= 1
  kAT1,   // sum a_ij (x_j - y_ij) <= (sum a_ij)(1 - x_i)
  kW2,    // 2 y_ij - x_i - x_j <= 0
  kADW2,  // sum b_ij (2 y_ij - x_j) <= (sum b_ij) x_i
  kG2,    // y_ij - x_i <= 0
  kAG2,   // sum g_ij y_ij <= (sum g_ij) x_i
  kD2,    // y_ji - x_i <= 0, j in S-scope
  kAD2,   // sum d_ij y_ji <= (sum d_ij) x_i
  kAGD2,  // joint aggregation of the G2 and D2 blocks
  kP2,    // y_ij + y_ji - 2 x_i <= 0
  kAB2,   // sum b_ij (y_ij + y_ji) <= 2 (sum b_ij) x_i
  kSY,    // y_ij - y_ji <= 0
  kSYE,   // y_ij = y_ji, once per unordered pair
  kATH,   // sum t_ij (y_ij - y_ji) <= 0
  kATHE,  // same as kATH but an equality
  kHM,    // sum y_ij <= |R_i| x_i (the unweighted mis-aggregation)
};

struct PlanItem {
  RowClass cls;
  Scope scope;
};

/// Bound/integrality profile of the y variables.
enum class YProfile {
  kBinaryAll,   // y in {0,1} everywhere
  kNonnegAll,   // y >= 0
  kBoxAll,      // 0 <= y <= 1
  kOrDw,        // R+: binary; R-: y >= 0
  kOrFree,      // R-: y >= 0; R+: free below, no upper (as printed)
  kOrPkBox,     // R-: y >= 0; R+: 0 <= y <= 1
  kOrPkBoxRb,   // R-: y >= 0; R+: y <= 1 with the lower bound dropped
};

struct ModelDef {
  std::vector<PlanItem> plan;
  YProfile profile;
};

inline ModelDef model_def(ModelId id) {
  using R = RowClass;
  using S = Scope;
  using Y = YProfile;
  auto def = [](std::vector<PlanItem> p, Y y) { return ModelDef{std::move(p), y}; };
  switch (id) {
    case ModelId::DW: return def({{R::kT1, S::kAll}, {R::kW2, S::kAll}}, Y::kBinaryAll);
    case ModelId::GW: return def({{R::kT1, S::kAll}, {R::kG2, S::kAll}, {R::kD2, S::kAll}}, Y::kNonnegAll);
    case ModelId::FT: return def({{R::kT1, S::kAll}, {R::kG2, S::kAll}, {R::kSY, S::kAll}}, Y::kNonnegAll);
    case ModelId::FTeq: return def({{R::kT1, S::kAll}, {R::kG2, S::kAll}, {R::kSYE, S::kAll}}, Y::kNonnegAll);
    case ModelId::PK: return def({{R::kT1, S::kAll}, {R::kP2, S::kAll}}, Y::kNonnegAll);
    case ModelId::ORDW: return def({{R::kT1, S::kMinus}, {R::kW2, S::kPlus}}, Y::kOrDw);
    case ModelId::ORGW:
      return def({{R::kT1, S::kMinus}, {R::kG2, S::kPlus}, {R::kD2, S::kPlus}}, Y::kOrFree);
    case ModelId::ORFT:
      return def({{R::kT1, S::kMinus}, {R::kG2, S::kPlus}, {R::kSY, S::kPlus}}, Y::kOrFree);
    case ModelId::ORPK: return def({{R::kT1, S::kMinus}, {R::kP2, S::kPlus}}, Y::kOrFree);
    case ModelId::DW_a: return def({{R::kAT1, S::kAll}, {R::kW2, S::kAll}}, Y::kBinaryAll);
    case ModelId::GW_a:
      return def({{R::kAT1, S::kAll}, {R::kG2, S::kAll}, {R::kD2, S::kAll}}, Y::kNonnegAll);
    case ModelId::FT_a:
      return def({{R::kAT1, S::kAll}, {R::kG2, S::kAll}, {R::kSY, S::kAll}}, Y::kNonnegAll);
    case ModelId::PK_a: return def({{R::kAT1, S::kAll}, {R::kP2, S::kAll}}, Y::kBoxAll);
    case ModelId::DW_sb: return def({{R::kT1, S::kAll}, {R::kADW2, S::kAll}}, Y::kBinaryAll);
    case ModelId::PK_sb: return def({{R::kT1, S::kAll}, {R::kAB2, S::kAll}}, Y::kBoxAll);
    case ModelId::FT_sg:
      return def({{R::kT1, S::kAll}, {R::kAG2, S::kAll}, {R::kSY, S::kAll}}, Y::kBoxAll);
    case ModelId::FT_st:
      return def({{R::kT1, S::kAll}, {R::kG2, S::kAll}, {R::kATH, S::kAll}}, Y::kNonnegAll);
    case ModelId::FT_sgt:
      return def({{R::kT1, S::kAll}, {R::kAG2, S::kAll}, {R::kATH, S::kAll}}, Y::kBoxAll);
    case ModelId::GW_sgpd: return def({{R::kT1, S::kAll}, {R::kAGD2, S::kAll}}, Y::kBoxAll);
    case ModelId::GW_sgd:
      return def({{R::kT1, S::kAll}, {R::kAG2, S::kAll}, {R::kAD2, S::kAll}}, Y::kBoxAll);
    case ModelId::GW_sg:
      return def({{R::kT1, S::kAll}, {R::kAG2, S::kAll}, {R::kD2, S::kAll}}, Y::kBoxAll);
    case ModelId::GW_sd:
      return def({{R::kT1, S::kAll}, {R::kG2, S::kAll}, {R::kAD2, S::kAll}}, Y::kBoxAll);
    case ModelId::GW_agpd: return def({{R::kAT1, S::kAll}, {R::kAGD2, S::kAll}}, Y::kBoxAll);
    case ModelId::GW_agd:
      return def({{R::kAT1, S::kAll}, {R::kAG2, S::kAll}, {R::kAD2, S::kAll}}, Y::kBoxAll);
    case ModelId::GW_ag:
      return def({{R::kAT1, S::kAll}, {R::kAG2, S::kAll}, {R::kD2, S::kAll}}, Y::kBoxAll);
    case ModelId::GW_ad:
      return def({{R::kAT1, S::kAll}, {R::kG2, S::kAll}, {R::kAD2, S::kAll}}, Y::kBoxAll);
    case ModelId::FT_ag:
      return def({{R::kAT1, S::kAll}, {R::kAG2, S::kAll}, {R::kSY, S::kAll}}, Y::kBoxAll);
    case ModelId::FT_at:
      return def({{R::kAT1, S::kAll}, {R::kG2, S::kAll}, {R::kATH, S::kAll}}, Y::kBoxAll);
    case ModelId::FT_agt:
      return def({{R::kAT1, S::kAll}, {R::kAG2, S::kAll}, {R::kATH, S::kAll}}, Y::kBoxAll);
    case ModelId::FT_agt_eq:
      return def({{R::kAT1, S::kAll}, {R::kAG2, S::kAll}, {R::kATHE, S::kAll}}, Y::kBoxAll);
    case ModelId::PK_ab: return def({{R::kAT1, S::kAll}, {R::kAB2, S::kAll}}, Y::kBoxAll);
    case ModelId::HM: return def({{R::kT1, S::kAll}, {R::kHM, S::kAll}}, Y::kBoxAll);
    case ModelId::ORDW_a: return def({{R::kAT1, S::kMinus}, {R::kW2, S::kAll}}, Y::kBinaryAll);
    case ModelId::ORGW_a:
      return def({{R::kAT1, S::kMinus}, {R::kG2, S::kAll}, {R::kD2, S::kAll}}, Y::kNonnegAll);
    case ModelId::ORFT_a:
      return def({{R::kAT1, S::kMinus}, {R::kG2, S::kAll}, {R::kSY, S::kAll}}, Y::kNonnegAll);
    case ModelId::ORPK_a: return def({{R::kAT1, S::kMinus}, {R::kP2, S::kAll}}, Y::kNonnegAll);
    case ModelId::ORDW_A: return def({{R::kAT1, S::kMinus}, {R::kW2, S::kPlus}}, Y::kOrDw);
    case ModelId::ORDW_AF: return def({{R::kAT1, S::kAll}, {R::kW2, S::kPlus}}, Y::kOrDw);
    case ModelId::ORPK_sb: return def({{R::kT1, S::kMinus}, {R::kAB2, S::kPlus}}, Y::kOrPkBox);
    case ModelId::ORPK_sb_rb: return def({{R::kT1, S::kMinus}, {R::kAB2, S::kPlus}}, Y::kOrPkBoxRb);
    case ModelId::ORGW_sgpd: return def({{R::kT1, S::kMinus}, {R::kAGD2, S::kPlus}}, Y::kBoxAll);
    case ModelId::ORGW_sgd:
      return def({{R::kT1, S::kMinus}, {R::kAG2, S::kPlus}, {R::kAD2, S::kPlus}}, Y::kBoxAll);
    case ModelId::ORGW_sg:
      return def({{R::kT1, S::kMinus}, {R::kAG2, S::kPlus}, {R::kD2, S::kPlus}}, Y::kBoxAll);
    case ModelId::ORGW_sd:
      return def({{R::kT1, S::kMinus}, {R::kG2, S::kPlus}, {R::kAD2, S::kPlus}}, Y::kBoxAll);
    case ModelId::ORFT_sg:
      return def({{R::kT1, S::kMinus}, {R::kAG2, S::kPlus}, {R::kSY, S::kPlus}}, Y::kOrPkBox);
    case ModelId::ORFT_st:
      return def({{R::kT1, S::kMinus}, {R::kG2, S::kPlus}, {R::kATH, S::kPlus}}, Y::kOrPkBox);
    case ModelId::ORFT_sgt:
      return def({{R::kT1, S::kMinus}, {R::kAG2, S::kPlus}, {R::kATH, S::kPlus}}, Y::kOrPkBox);
    case ModelId::ORPK_ab: return def({{R::kAT1, S::kMinus}, {R::kAB2, S::kAll}}, Y::kBoxAll);
    case ModelId::ORGW_agpd: return def({{R::kAT1, S::kMinus}, {R::kAGD2, S::kAll}}, Y::kBoxAll);
    case ModelId::ORGW_agd:
      return def({{R::kAT1, S::kMinus}, {R::kAG2, S::kAll}, {R::kAD2, S::kAll}}, Y::kBoxAll);
    case ModelId::ORGW_ag:
      return def({{R::kAT1, S::kMinus}, {R::kAG2, S::kAll}, {R::kD2, S::kAll}}, Y::kBoxAll);
    case ModelId::ORGW_ad:
      return def({{R::kAT1, S::kMinus}, {R::kG2, S::kAll}, {R::kAD2, S::kAll}}, Y::kBoxAll);
    case ModelId::ORFT_ag:
      return def({{R::kAT1, S::kMinus}, {R::kAG2, S::kAll}, {R::kSY, S::kAll}}, Y::kBoxAll);
    case ModelId::ORFT_at:
      return def({{R::kAT1, S::kMinus}, {R::kG2, S::kAll}, {R::kATH, S::kAll}}, Y::kBoxAll);
    case ModelId::ORFT_agt:
      return def({{R::kAT1, S::kMinus}, {R::kAG2, S::kAll}, {R::kATH, S::kAll}}, Y::kBoxAll);
  }
  throw BuildError("unknown model id");
}

inline const std::vector<int>& row_scope(const IndexSets& sets, Scope s, int i) {
  switch (s) {
    case Scope::kAll: return sets.r[i];
    case Scope::kPlus: return sets.r_plus[i];
    case Scope::kMinus: return sets.r_minus[i];
  }
  return sets.r[i];
}

inline const std::vector<int>& col_scope(const IndexSets& sets, Scope s, int i) {
  switch (s) {
    case Scope::kAll: return sets.s[i];
    case Scope::kPlus: return sets.s_plus[i];
    case Scope::kMinus: return sets.s_minus[i];
  }
  return sets.s[i];
}

/// Weight kinds a plan item consumes: (kind, keyed over row set or column set).
inline void plan_weights(const PlanItem& item, const IndexSets& sets, int i,
                         std::vector<std::tuple<WeightKind, int, int>>& out) {
  auto add_r = [&](WeightKind k) {
    for (int j : row_scope(sets, item.scope, i)) out.emplace_back(k, i + 1, j + 1);
  };
  auto add_s = [&](WeightKind k) {
    for (int j : col_scope(sets, item.scope, i)) out.emplace_back(k, i + 1, j + 1);
  };
  switch (item.cls) {
    case RowClass::kAT1: add_r(WeightKind::kAlpha); break;
    case RowClass::kADW2: add_r(WeightKind::kBeta); break;
    case RowClass::kAB2: add_r(WeightKind::kBeta); break;
    case RowClass::kAG2: add_r(WeightKind::kGamma); break;
    case RowClass::kAD2: add_s(WeightKind::kDelta); break;
    case RowClass::kAGD2:
      add_r(WeightKind::kGamma);
      add_s(WeightKind::kDelta);
      break;
    case RowClass::kATH:
    case RowClass::kATHE: add_r(WeightKind::kTheta); break;
    default: break;
  }
}

}  // namespace detail

/// Exact list of weights the builder will read for this formulation.
inline std::vector<std::tuple<WeightKind, int, int>> required_weights(ModelId id,
                                                                      const IndexSets& sets) {
  std::vector<std::tuple<WeightKind, int, int>> out;
  const auto def = detail::model_def(id);
  const int n = static_cast<int>(sets.r.size());
  for (const auto& item : def.plan)
    for (int i = 0; i < n; ++i) detail::plan_weights(item, sets, i, out);
  return out;
}

/// The closed-form general-constraint count specialized to the instance;
/// aggregated rows over an empty index set are omitted, so the dense formulas
/// (2n(n-1), 3n, ...) appear here in their per-row sum form.
inline long expected_constraint_count(ModelId id, const IndexSets& sets) {
  using detail::RowClass;
  const auto def = detail::model_def(id);
  const int n = static_cast<int>(sets.r.size());
  long count = 0;
  for (const auto& item : def.plan) {
    for (int i = 0; i < n; ++i) {
      const auto& rs = detail::row_scope(sets, item.scope, i);
      const auto& cs = detail::col_scope(sets, item.scope, i);
      switch (item.cls) {
        case RowClass::kT1:
        case RowClass::kW2:
        case RowClass::kG2:
        case RowClass::kP2:
        case RowClass::kSY: count += static_cast<long>(rs.size()); break;
        case RowClass::kD2: count += static_cast<long>(cs.size()); break;
        case RowClass::kSYE:
          for (int j : rs)
            if (j > i) ++count;
          break;
        case RowClass::kAT1:
        case RowClass::kADW2:
        case RowClass::kAB2:
        case RowClass::kAG2:
        case RowClass::kATH:
        case RowClass::kATHE:
        case RowClass::kHM:
          if (!rs.empty()) ++count;
          break;
        case RowClass::kAD2:
          if (!cs.empty()) ++count;
          break;
        case RowClass::kAGD2:
          if (!rs.empty() || !cs.empty()) ++count;
          break;
      }
    }
  }
  return count;
}

/// Builds the formulation `id` for `inst`. The resulting model maximizes
/// sum q_ij y_ij + sum c_i x_i with y variables for every ordered nonzero
/// pair; y<=1-style restrictions become variable bounds, never rows.
inline MilpModel build(ModelId id, const QuboInstance& inst, const WeightSet& w = {},
                       BuildOptions opts = {}) {
  using detail::RowClass;
  using detail::Scope;
  using detail::YProfile;
  const ModelInfo& info = model_info(id);
  if (info.known_invalid && !opts.allow_invalid)
    throw BuildError(std::string(info.name) + " is a known-invalid formulation; pass allow-invalid to build it");
  if (opts.strip_y_upper && id != ModelId::PK_a)
    throw BuildError("strip_y_upper only applies to PK(a)");
  if (opts.strip_y_upper && !opts.allow_invalid)
    throw BuildError("stripping the y<=1 bounds of PK(a) yields an invalid model; pass allow-invalid");
  if (auto err = ::qubolin::validate(inst)) throw BuildError("invalid instance: " + *err);
  const bool base_model = id == ModelId::DW || id == ModelId::GW || id == ModelId::FT ||
                          id == ModelId::FTeq || id == ModelId::PK;
  if (inst.allow_asymmetric && !base_model)
    throw BuildError("asymmetric study instances are supported only by the four basic models");

  const IndexSets sets = index_sets(inst);
  const auto def = detail::model_def(id);
  const int n = inst.n;

  // Validate every weight the plan will read.
  for (const auto& [kind, i, j] : required_weights(id, sets)) {
    const double v = w.get(kind, i, j);
    if (!std::isfinite(v) || v < 0.0)
      throw BuildError(std::string("weight ") + weight_kind_name(kind) + "(" + std::to_string(i) +
                       "," + std::to_string(j) + ") must be positive");
    if (v == 0.0 && !(w.mode == WeightMode::kDualExact && opts.lp_study))
      throw BuildError(std::string("zero ") + weight_kind_name(kind) + " weight at (" +
                       std::to_string(i) + "," + std::to_string(j) +
                       ") is admissible only for dual-exact LP study");
  }

  MilpModel m;
  m.name = info.name;
  m.fingerprint = inst.fingerprint();
  m.relaxation_only = opts.lp_study;
  for (int i = 0; i < n; ++i)
    m.add_var("x" + std::to_string(i + 1), 0.0, 1.0,
              opts.lp_study ? VarKind::kContinuous : VarKind::kBinary);
  m.num_x = n;

  // y variables in row-major nonzero order, bounds per profile.
  for (int i = 0; i < n; ++i)
    for (int j : sets.r[i]) {
      double lo = 0.0, up = kInf;
      VarKind kind = VarKind::kContinuous;
      const bool pos = inst.q[i][j] > 0;
      switch (def.profile) {
        case YProfile::kBinaryAll: lo = 0.0, up = 1.0, kind = VarKind::kBinary; break;
        case YProfile::kNonnegAll: break;
        case YProfile::kBoxAll: up = 1.0; break;
        case YProfile::kOrDw:
          if (pos) up = 1.0, kind = VarKind::kBinary;
          break;
        case YProfile::kOrFree:
          if (pos) lo = -kInf;
          break;
        case YProfile::kOrPkBox:
          if (pos) up = 1.0;
          break;
        case YProfile::kOrPkBoxRb:
          if (pos) lo = -kInf, up = 1.0;
          break;
      }
      if (opts.strip_y_upper) up = kInf;
      if (opts.lp_study) kind = VarKind::kContinuous;
      const int idx = m.add_var("y" + std::to_string(i + 1) + "_" + std::to_string(j + 1), lo, up, kind);
      m.y_index[{i + 1, j + 1}] = idx;
    }

  for (int i = 0; i < n; ++i) {
    if (inst.c[i] != 0) m.objective.emplace_back(i, static_cast<double>(inst.c[i]));
  }
  for (int i = 0; i < n; ++i)
    for (int j : sets.r[i]) m.objective.emplace_back(m.y(i + 1, j + 1), static_cast<double>(inst.q[i][j]));
  if (m.objective.empty()) m.objective.emplace_back(0, 0.0);

  auto row = [&](std::string name, RowTag tag, Sense sense, double rhs, int ci, int cj,
                 std::vector<std::pair<int, double>> terms) {
    Constraint c;
    c.name = std::move(name);
    c.terms = std::move(terms);
    c.sense = sense;
    c.rhs = rhs;
    c.tag = tag;
    c.ci = ci;
    c.cj = cj;
    m.rows.push_back(std::move(c));
  };
  auto num = [](int i, int j) { return std::to_string(i) + "_" + std::to_string(j); };

  for (const auto& item : def.plan) {
    for (int i = 0; i < n; ++i) {
      const auto& rs = detail::row_scope(sets, item.scope, i);
      const auto& cs = detail::col_scope(sets, item.scope, i);
      const int I = i + 1;
      switch (item.cls) {
        case RowClass::kT1:
          for (int j : rs)
            row("T1_" + num(I, j + 1), RowTag::kType1, Sense::kLe, 1.0, I, j + 1,
                {{i, 1.0}, {j, 1.0}, {m.y(I, j + 1), -1.0}});
          break;
        case RowClass::kW2:
          for (int j : rs)
            row("W2_" + num(I, j + 1), RowTag::kType2, Sense::kLe, 0.0, I, j + 1,
                {{m.y(I, j + 1), 2.0}, {i, -1.0}, {j, -1.0}});
          break;
        case RowClass::kG2:
          for (int j : rs)
            row("G2_" + num(I, j + 1), RowTag::kType2, Sense::kLe, 0.0, I, j + 1,
                {{m.y(I, j + 1), 1.0}, {i, -1.0}});
          break;
        case RowClass::kD2:
          for (int j : cs)
            row("D2_" + num(I, j + 1), RowTag::kType2, Sense::kLe, 0.0, I, j + 1,
                {{m.y(j + 1, I), 1.0}, {i, -1.0}});
          break;
        case RowClass::kP2:
          for (int j : rs)
            row("P2_" + num(I, j + 1), RowTag::kType2, Sense::kLe, 0.0, I, j + 1,
                {{m.y(I, j + 1), 1.0}, {m.y(j + 1, I), 1.0}, {i, -2.0}});
          break;
        case RowClass::kSY:
          for (int j : rs)
            row("SY_" + num(I, j + 1), RowTag::kSymmetry, Sense::kLe, 0.0, I, j + 1,
                {{m.y(I, j + 1), 1.0}, {m.y(j + 1, I), -1.0}});
          break;
        case RowClass::kSYE:
          for (int j : rs)
            if (j > i)
              row("SYE_" + num(I, j + 1), RowTag::kSymmetry, Sense::kEq, 0.0, I, j + 1,
                  {{m.y(I, j + 1), 1.0}, {m.y(j + 1, I), -1.0}});
          break;
        case RowClass::kAT1: {
          if (rs.empty()) break;
          double total = 0.0;
          std::vector<std::pair<int, double>> terms;
          terms.emplace_back(i, 0.0);  // placeholder for the x_i coefficient
          for (int j : rs) {
            const double a = w.get(WeightKind::kAlpha, I, j + 1);
            total += a;
            terms.emplace_back(j, a);
            terms.emplace_back(m.y(I, j + 1), -a);
          }
          terms[0].second = total;
          row("AT1_" + std::to_string(I), RowTag::kAggType1, Sense::kLe, total, I, 0,
              std::move(terms));
          break;
        }
        case RowClass::kADW2: {
          if (rs.empty()) break;
          double total = 0.0;
          std::vector<std::pair<int, double>> terms;
          terms.emplace_back(i, 0.0);
          for (int j : rs) {
            const double b = w.get(WeightKind::kBeta, I, j + 1);
            total += b;
            terms.emplace_back(m.y(I, j + 1), 2.0 * b);
            terms.emplace_back(j, -b);
          }
          terms[0].second = -total;
          row("ADW2_" + std::to_string(I), RowTag::kAggType2, Sense::kLe, 0.0, I, 0,
              std::move(terms));
          break;
        }
        case RowClass::kAB2: {
          if (rs.empty()) break;
          double total = 0.0;
          std::vector<std::pair<int, double>> terms;
          terms.emplace_back(i, 0.0);
          for (int j : rs) {
            const double b = w.get(WeightKind::kBeta, I, j + 1);
            total += b;
            terms.emplace_back(m.y(I, j + 1), b);
            terms.emplace_back(m.y(j + 1, I), b);
          }
          terms[0].second = -2.0 * total;
          row("AB2_" + std::to_string(I), RowTag::kAggType2, Sense::kLe, 0.0, I, 0,
              std::move(terms));
          break;
        }
        case RowClass::kAG2: {
          if (rs.empty()) break;
          double total = 0.0;
          std::vector<std::pair<int, double>> terms;
          terms.emplace_back(i, 0.0);
          for (int j : rs) {
            const double g = w.get(WeightKind::kGamma, I, j + 1);
            total += g;
            terms.emplace_back(m.y(I, j + 1), g);
          }
          terms[0].second = -total;
          row("AG2_" + std::to_string(I), RowTag::kAggType2, Sense::kLe, 0.0, I, 0,
              std::move(terms));
          break;
        }
        case RowClass::kAD2: {
          if (cs.empty()) break;
          double total = 0.0;
          std::vector<std::pair<int, double>> terms;
          terms.emplace_back(i, 0.0);
          for (int j : cs) {
            const double d = w.get(WeightKind::kDelta, I, j + 1);
            total += d;
            terms.emplace_back(m.y(j + 1, I), d);
          }
          terms[0].second = -total;
          row("AD2_" + std::to_string(I), RowTag::kAggType2, Sense::kLe, 0.0, I, 0,
              std::move(terms));
          break;
        }
        case RowClass::kAGD2: {
          if (rs.empty() && cs.empty()) break;
          double total = 0.0;
          std::vector<std::pair<int, double>> terms;
          terms.emplace_back(i, 0.0);
          for (int j : rs) {
            const double g = w.get(WeightKind::kGamma, I, j + 1);
            total += g;
            terms.emplace_back(m.y(I, j + 1), g);
          }
          for (int j : cs) {
            const double d = w.get(WeightKind::kDelta, I, j + 1);
            total += d;
            terms.emplace_back(m.y(j + 1, I), d);
          }
          terms[0].second = -total;
          row("AGD2_" + std::to_string(I), RowTag::kAggType2, Sense::kLe, 0.0, I, 0,
              std::move(terms));
          break;
        }
        case RowClass::kATH:
        case RowClass::kATHE: {
          if (rs.empty()) break;
          const bool eq = item.cls == RowClass::kATHE;
          std::vector<std::pair<int, double>> terms;
          for (int j : rs) {
            const double t = w.get(WeightKind::kTheta, I, j + 1);
            terms.emplace_back(m.y(I, j + 1), t);
            terms.emplace_back(m.y(j + 1, I), -t);
          }
          row((eq ? "ATHE_" : "ATH_") + std::to_string(I), RowTag::kAggType2,
              eq ? Sense::kEq : Sense::kLe, 0.0, I, 0, std::move(terms));
          break;
        }
        case RowClass::kHM: {
          if (rs.empty()) break;
          std::vector<std::pair<int, double>> terms;
          terms.emplace_back(i, -static_cast<double>(rs.size()));
          for (int j : rs) terms.emplace_back(m.y(I, j + 1), 1.0);
          row("HM2_" + std::to_string(I), RowTag::kAggType2, Sense::kLe, 0.0, I, 0,
              std::move(terms));
          break;
        }
      }
    }
  }
  return m;
}

/// Base model whose optimal row duals supply this aggregation's multipliers
/// (the per-row-i blocks in the surrogate-duality argument). nullopt when no
/// single base solve yields every block, e.g. the simultaneous optimality
/// restricted aggregations that reuse the full type-2 blocks.
inline std::optional<ModelId> dual_base(ModelId id) {
  switch (id) {
    case ModelId::DW_a:
    case ModelId::DW_sb: return ModelId::DW;
    case ModelId::GW_a:
    case ModelId::GW_sgpd:
    case ModelId::GW_sgd:
    case ModelId::GW_sg:
    case ModelId::GW_sd:
    case ModelId::GW_agpd:
    case ModelId::GW_agd:
    case ModelId::GW_ag:
    case ModelId::GW_ad: return ModelId::GW;
    case ModelId::FT_a:
    case ModelId::FT_sg:
    case ModelId::FT_st:
    case ModelId::FT_sgt:
    case ModelId::FT_ag:
    case ModelId::FT_at:
    case ModelId::FT_agt: return ModelId::FT;
    case ModelId::PK_a:
    case ModelId::PK_sb:
    case ModelId::PK_ab: return ModelId::PK;
    case ModelId::ORDW_a: return ModelId::ORDW;
    case ModelId::ORGW_a:
    case ModelId::ORGW_sgpd:
    case ModelId::ORGW_sgd:
    case ModelId::ORGW_sg:
    case ModelId::ORGW_sd: return ModelId::ORGW;
    case ModelId::ORFT_a:
    case ModelId::ORFT_sg:
    case ModelId::ORFT_st:
    case ModelId::ORFT_sgt: return ModelId::ORFT;
    case ModelId::ORPK_a:
    case ModelId::ORPK_sb: return ModelId::ORPK;
    default: return std::nullopt;
  }
}

/// Row-name prefix of the base-model block a weight kind aggregates.
inline const char* dual_source_prefix(WeightKind k) {
  switch (k) {
    case WeightKind::kAlpha: return "T1";
    case WeightKind::kBeta: return "P2";
    case WeightKind::kGamma: return "G2";
    case WeightKind::kDelta: return "D2";
    case WeightKind::kTheta: return "SY";
  }
  return "";
}

}  // namespace qubolin
