#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qubolin/branch_bound.hpp"
#include "qubolin/build.hpp"
#include "qubolin/oracle.hpp"
#include "qubolin/simplex.hpp"

namespace qubolin {

struct ComparisonRow {
  std::string instance_id;
  std::string model;
  std::string weight_mode;
  double lp_value = 0.0;
  std::string milp_status;
  double model_objective = 0.0;
  long long recomputed_qubo = 0;
  double best_bound = 0.0;
  double gap = 0.0;
  long nodes = 0;
  double wall_ms = 0.0;
  long general_constraints = 0;
  std::string error;  // nonempty when the cell failed; never silently dropped
};

struct GridOptions {
  double time_limit_s = kInf;
  bool stop_after_first_incumbent = false;
  bool with_timings = false;  // wall_ms stays 0 otherwise, keeping outputs byte-stable
  int jobs = 1;
  bool lp_only = false;
};

inline int default_jobs() {
  if (const char* env = std::getenv("QUBOLIN_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Builds the weight set a (model, instance, mode) cell runs with. Dual modes
/// solve the aggregation's base model once and read the block duals.
inline WeightSet weights_for(ModelId id, const QuboInstance& inst, WeightMode mode) {
  if (mode == WeightMode::kUnit || mode == WeightMode::kCustom) return WeightSet{};
  const auto base = dual_base(id);
  if (!base) throw BuildError("dual weights are undefined for " + model_name(id));
  const MilpModel base_model = build(*base, inst, {}, {.allow_invalid = true});
  const LpResult base_lp = solve_lp(base_model);
  if (base_lp.status != LpStatus::kOptimal)
    throw SolveError("base relaxation not optimal for dual weights");
  WeightSet w;
  w.mode = WeightMode::kDualExact;
  const IndexSets sets = index_sets(inst);
  std::set<WeightKind> kinds;
  for (const auto& [kind, i, j] : required_weights(id, sets)) kinds.insert(kind);
  for (WeightKind kind : kinds) {
    auto duals = extract_duals(base_model, base_lp, dual_source_prefix(kind));
    w.table(kind) = std::move(duals);
  }
  if (mode == WeightMode::kDualMilpSafe) return w.milp_safe();
  return w;
}

/// One cell of the comparison grid: build, LP-relax, then solve the MILP
/// unless the cell is LP-only or the model is a relaxation-only object.
inline ComparisonRow run_cell(const QuboInstance& inst, ModelId id, WeightMode mode,
                              const GridOptions& opts) {
  ComparisonRow row;
  row.instance_id = inst.id;
  row.model = model_name(id);
  row.weight_mode = weight_mode_name(mode);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const WeightSet w = weights_for(id, inst, mode);
    BuildOptions bopts;
    bopts.allow_invalid = true;
    bopts.lp_study = mode == WeightMode::kDualExact;
    const MilpModel m = build(id, inst, w, bopts);
    row.general_constraints = count_general_constraints(m);
    const LpResult lp = solve_lp(m);
    if (lp.status != LpStatus::kOptimal) throw SolveError(lp_status_name(lp.status));
    row.lp_value = lp.objective;
    if (!opts.lp_only && !m.relaxation_only) {
      MilpOptions mopts;
      mopts.time_limit_s = opts.time_limit_s;
      mopts.stop_after_first_incumbent = opts.stop_after_first_incumbent;
      const MilpResult r = solve_milp(m, inst, mopts);
      row.milp_status = milp_status_name(r.status);
      row.model_objective = r.has_incumbent ? r.model_objective : -kInf;
      row.recomputed_qubo = r.recomputed_qubo;
      row.best_bound = r.best_bound;
      row.gap = r.best_bound - row.model_objective;
      row.nodes = r.nodes;
    } else {
      row.milp_status = "LP_ONLY";
      row.model_objective = lp.objective;
      row.best_bound = lp.objective;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  if (opts.with_timings)
    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

/// Full (instance x model x weight-mode) grid. Cells run independently (a
/// --jobs worker pool); assembly order is always instance-major, then model,
/// then mode.
inline std::vector<ComparisonRow> run_grid(const std::vector<QuboInstance>& instances,
                                           const std::vector<ModelId>& models,
                                           const std::vector<WeightMode>& modes,
                                           const GridOptions& opts = {}) {
  struct Cell {
    const QuboInstance* inst;
    ModelId id;
    WeightMode mode;
  };
  std::vector<Cell> cells;
  for (const auto& inst : instances)
    for (ModelId id : models)
      for (WeightMode mode : modes) cells.push_back({&inst, id, mode});
  std::vector<ComparisonRow> rows(cells.size());
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    for (std::size_t k = 0; k < cells.size(); ++k)
      rows[k] = run_cell(*cells[k].inst, cells[k].id, cells[k].mode, opts);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next.fetch_add(1); k < cells.size(); k = next.fetch_add(1))
        rows[k] = run_cell(*cells[k].inst, cells[k].id, cells[k].mode, opts);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

inline const char* comparison_csv_header() {
  return "instance,model,weight_mode,lp_value,milp_status,model_objective,recomputed_qubo,"
         "best_bound,gap,nodes,wall_ms,general_constraints,error";
}

inline std::string emit_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream os;
  os << comparison_csv_header() << "\n";
  for (const auto& r : rows) {
    os << csv_quote(r.instance_id) << "," << csv_quote(r.model) << "," << r.weight_mode << ","
       << format_double(r.lp_value) << "," << r.milp_status << ","
       << format_double(r.model_objective) << "," << r.recomputed_qubo << ","
       << format_double(r.best_bound) << "," << format_double(r.gap) << "," << r.nodes << ","
       << format_double(r.wall_ms) << "," << r.general_constraints << "," << csv_quote(r.error)
       << "\n";
  }
  return os.str();
}

inline std::string emit_jsonl(const std::vector<ComparisonRow>& rows) {
  auto jstr = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  auto jnum = [](double v) { return std::isfinite(v) ? format_double(v) : std::string("null"); };
  std::ostringstream os;
  for (const auto& r : rows) {
    os << "{\"instance\":" << jstr(r.instance_id) << ",\"model\":" << jstr(r.model)
       << ",\"weight_mode\":" << jstr(r.weight_mode) << ",\"lp_value\":" << jnum(r.lp_value)
       << ",\"milp_status\":" << jstr(r.milp_status)
       << ",\"model_objective\":" << jnum(r.model_objective)
       << ",\"recomputed_qubo\":" << r.recomputed_qubo
       << ",\"best_bound\":" << jnum(r.best_bound) << ",\"gap\":" << jnum(r.gap)
       << ",\"nodes\":" << r.nodes << ",\"wall_ms\":" << jnum(r.wall_ms)
       << ",\"general_constraints\":" << r.general_constraints << ",\"error\":" << jstr(r.error)
       << "}\n";
  }
  return os.str();
}

/// Relaxation-equality checks on one symmetric instance: GW = FT = PK,
/// GW <= DW, and each basic model equals its optimality restricted form.
struct LpEquivalenceRow {
  std::string instance_id;
  double gw = 0, ft = 0, pk = 0, dw = 0;
  double max_deviation = 0;  // largest violated equality margin
  bool pass = false;
};

inline LpEquivalenceRow lp_equivalence_check(const QuboInstance& inst, double tol = 1e-6) {
  LpEquivalenceRow row;
  row.instance_id = inst.id;
  auto lp_of = [&](ModelId id) {
    const LpResult r = solve_lp(build(id, inst));
    if (r.status != LpStatus::kOptimal)
      throw SolveError("relaxation not optimal for " + model_name(id));
    return r.objective;
  };
  row.gw = lp_of(ModelId::GW);
  row.ft = lp_of(ModelId::FT);
  row.pk = lp_of(ModelId::PK);
  row.dw = lp_of(ModelId::DW);
  double dev = 0.0;
  dev = std::max(dev, std::fabs(row.gw - row.ft));
  dev = std::max(dev, std::fabs(row.gw - row.pk));
  dev = std::max(dev, row.gw - row.dw);  // GW must not exceed DW
  const std::pair<ModelId, ModelId> or_pairs[] = {{ModelId::DW, ModelId::ORDW},
                                                  {ModelId::GW, ModelId::ORGW},
                                                  {ModelId::FT, ModelId::ORFT},
                                                  {ModelId::PK, ModelId::ORPK}};
  for (const auto& [base, orv] : or_pairs) dev = std::max(dev, std::fabs(lp_of(base) - lp_of(orv)));
  row.max_deviation = dev;
  row.pass = dev <= tol;
  return row;
}

/// Dual-weight aggregation equality on one instance and one aggregated model:
/// with exact block duals the aggregated relaxation matches its base; with
/// unit weights (and with zero-replaced duals) it can only move up.
struct DualWeightRow {
  std::string instance_id;
  std::string model;
  double base_lp = 0, dual_exact_lp = 0, unit_lp = 0, dual_safe_lp = 0;
  bool pass_exact = false, pass_unit = false, pass_safe = false;
};

inline DualWeightRow dual_weight_check(const QuboInstance& inst, ModelId id, double tol = 1e-6) {
  DualWeightRow row;
  row.instance_id = inst.id;
  row.model = model_name(id);
  const auto base = dual_base(id);
  if (!base) throw BuildError("dual weights are undefined for " + model_name(id));
  const MilpModel base_model = build(*base, inst);
  const LpResult base_lp = solve_lp(base_model);
  if (base_lp.status != LpStatus::kOptimal) throw SolveError("base relaxation not optimal");
  row.base_lp = base_lp.objective;

  auto lp_with = [&](const WeightSet& w, bool lp_study) {
    const MilpModel m = build(id, inst, w, {.allow_invalid = false, .lp_study = lp_study});
    const LpResult r = solve_lp(m);
    if (r.status != LpStatus::kOptimal)
      throw SolveError("aggregated relaxation not optimal for " + model_name(id));
    return r.objective;
  };
  row.dual_exact_lp = lp_with(weights_for(id, inst, WeightMode::kDualExact), true);
  row.unit_lp = lp_with(WeightSet{}, false);
  row.dual_safe_lp = lp_with(weights_for(id, inst, WeightMode::kDualMilpSafe), false);
  row.pass_exact = std::fabs(row.dual_exact_lp - row.base_lp) <= tol;
  row.pass_unit = row.unit_lp >= row.base_lp - tol;
  row.pass_safe = row.dual_safe_lp >= row.base_lp - tol;
  return row;
}

/// The thirteen aggregations covered by the dual-weight equality results.
inline std::vector<ModelId> dual_equality_models() {
  return {ModelId::DW_a,  ModelId::GW_a,    ModelId::FT_a,  ModelId::PK_a, ModelId::PK_sb,
          ModelId::FT_sg, ModelId::FT_st,   ModelId::GW_sg, ModelId::GW_sd, ModelId::GW_sgpd,
          ModelId::GW_agpd, ModelId::FT_ag, ModelId::PK_ab};
}

}  // namespace qubolin
